//! Smith normal form by elementary operations.
//!
//! Pivoting always moves the smallest nonzero entry (in absolute value) of the
//! active submatrix to the corner. Every row operation is mirrored on `U` and
//! every column operation on `V`, so `U * M * V = D` holds exactly at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Unimodular, `rows x rows`.
    pub u: IntMatrix,
    /// Diagonal with `d_1 | d_2 | ...`, all entries non-negative.
    pub d: IntMatrix,
    /// Unimodular, `cols x cols`.
    pub v: IntMatrix,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = smallest_nonzero(&d, t) else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut clean = true;
            for r in t + 1..rows {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = -d[(r, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                clean &= d[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = -d[(t, c)].div_floor(&d[(t, t)]);
                d.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                clean &= d[(t, c)].is_zero();
            }
            if !clean {
                continue;
            }

            // Row and column are clear; enforce divisibility on the rest.
            match first_non_multiple(&d, t) {
                Some(r) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { u, d, v }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let e = &d[(r, c)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn first_non_multiple(d: &IntMatrix, t: usize) -> Option<usize> {
    let p = &d[(t, t)];
    for r in t + 1..d.rows() {
        for c in t + 1..d.cols() {
            if !d[(r, c)].is_multiple_of(p) {
                return Some(r);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn assert_contract(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d, "U*M*V != D for {a}");
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        let diag = s.diagonal();
        for (r, c) in (0..a.rows()).flat_map(|r| (0..a.cols()).map(move |c| (r, c))) {
            if r != c {
                assert!(s.d[(r, c)].is_zero());
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "{diag:?} breaks divisibility");
            }
        }
        s
    }

    /// Invariant factors from gcds of k x k minors: d_1...d_k = gcd of all k-minors.
    fn minors_oracle(a: &IntMatrix) -> Vec<BigInt> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let kmax = a.rows().min(a.cols());
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=kmax {
            let mut g = BigInt::zero();
            for rs in subsets(a.rows(), k) {
                for cs in subsets(a.cols(), k) {
                    let sub: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| a[(r, c)].clone()).collect())
                        .collect();
                    g = g.gcd(&IntMatrix::from_rows(&sub).unwrap().determinant().unwrap());
                }
            }
            if g.is_zero() {
                out.extend(std::iter::repeat_n(BigInt::zero(), kmax - out.len()));
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    #[test]
    fn two_by_two_example() {
        let s = assert_contract(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = assert_contract(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = assert_contract(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
    }

    #[test]
    fn divisibility_fixup_needed() {
        // diag(2, 3) is diagonal but not in Smith form
        let s = assert_contract(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn empty_shapes() {
        assert_contract(&IntMatrix::zeros(0, 3));
        assert_contract(&IntMatrix::zeros(4, 0));
    }

    proptest! {
        #[test]
        fn contract_on_random_matrices(
            (r, c, entries) in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec(-20i64..=20, r * c))
            })
        ) {
            let a = IntMatrix::from_vec(r, c, entries.into_iter().map(BigInt::from).collect()).unwrap();
            assert_contract(&a);
        }

        #[test]
        fn agrees_with_determinantal_divisors(
            (r, c, entries) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec(-9i64..=9, r * c))
            })
        ) {
            let a = IntMatrix::from_vec(r, c, entries.into_iter().map(BigInt::from).collect()).unwrap();
            prop_assert_eq!(smith_normal_form(&a).diagonal(), minors_oracle(&a));
        }
    }
}
