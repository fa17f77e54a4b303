//! Matrix exponential of a general complex matrix.
//!
//! Backed by nalgebra's scaling-and-squaring Padé implementation, which does
//! not assume normality; the tests below pin it against a Taylor series on
//! non-normal inputs.

use nalgebra::DMatrix;
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

/// `e^A` for a square complex matrix.
pub fn expm(a: &CMat) -> CMat {
    assert!(a.is_square(), "matrix exponential needs a square matrix");
    if a.nrows() == 0 {
        return a.clone();
    }
    a.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Truncated Taylor series with its own scaling.
    fn taylor_expm(a: &CMat) -> CMat {
        let n = a.nrows();
        let s = (one_norm(a).max(1.0)).log2().ceil() as i32 + 4;
        let x = scaled(a, 0.5f64.powi(s));
        let mut term = CMat::identity(n, n);
        let mut sum = term.clone();
        for k in 1..40 {
            term = &term * &x / c(k as f64, 0.0);
            sum += &term;
        }
        for _ in 0..s {
            sum = &sum * &sum;
        }
        sum
    }

    fn one_norm(a: &CMat) -> f64 {
        a.column_iter()
            .map(|col| col.iter().map(|x| x.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn scaled(a: &CMat, s: f64) -> CMat {
        a * c(s, 0.0)
    }

    fn max_diff(a: &CMat, b: &CMat) -> f64 {
        (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let z = CMat::zeros(3, 3);
        assert_eq!(expm(&z), CMat::identity(3, 3));
    }

    #[test]
    fn diagonal_matrix_exponentiates_entrywise() {
        let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(0.3, -1.0),
            c(-2.0, 4.0),
            c(7.0, 0.5),
        ]));
        let e = expm(&d);
        for i in 0..3 {
            assert!((e[(i, i)] - d[(i, i)].exp()).norm() <= 1e-13 * d[(i, i)].exp().norm());
        }
    }

    #[test]
    fn matches_taylor_across_norm_scales() {
        let base = CMat::from_row_slice(
            3,
            3,
            &[
                c(0.1, 0.2),
                c(-0.3, 0.0),
                c(0.0, 0.5),
                c(0.4, -0.1),
                c(0.2, 0.0),
                c(0.1, 0.1),
                c(-0.2, 0.3),
                c(0.0, -0.4),
                c(0.3, 0.0),
            ],
        );
        for scale in [0.01, 0.2, 0.8, 2.0, 5.0, 20.0] {
            let a = scaled(&base, scale);
            let e = expm(&a);
            let t = taylor_expm(&a);
            let mag = t.iter().map(|x| x.norm()).fold(1.0, f64::max);
            assert!(max_diff(&e, &t) <= 1e-12 * mag, "scale {scale}");
        }
    }

    #[test]
    fn nilpotent_jordan_block() {
        // exp([[0,1],[0,0]]·x) = [[1,x],[0,1]]
        let a = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(30.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let e = expm(&a);
        assert!((e[(0, 1)] - c(30.0, 0.0)).norm() < 1e-12);
        assert!((e[(0, 0)] - c(1.0, 0.0)).norm() < 1e-13);
        assert!(e[(1, 0)].norm() < 1e-13);
    }

    #[test]
    fn rotation_generator() {
        // exp(-iθσx) = cos θ I − i sin θ σx
        let theta = 3.7;
        let a = CMat::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(0.0, -theta), c(0.0, -theta), c(0.0, 0.0)],
        );
        let e = expm(&a);
        assert!((e[(0, 0)] - c(theta.cos(), 0.0)).norm() < 1e-14);
        assert!((e[(0, 1)] - c(0.0, -theta.sin())).norm() < 1e-14);
    }
}
