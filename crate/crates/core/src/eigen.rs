//! Characteristic polynomials and eigenvalues of small matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::matrix::Matrix;
use crate::scalar::{tolerance, Field, Scalar};

/// Coefficients c_0…c_d of det(xI − A), lowest degree first (c_d = 1),
/// by Faddeev–LeVerrier.
pub fn charpoly<F: Field>(a: &Matrix<F>) -> Vec<F> {
    let d = a.rows();
    let mut c = vec![F::zero(); d + 1];
    c[d] = F::one();
    let mut m = Matrix::<F>::zeros(d, d);
    for k in 1..=d {
        m = a.dot(&m).plus(&Matrix::scalar(d, c[d + 1 - k].clone()));
        let tr = a.dot(&m).trace();
        c[d - k] = -tr.div(&F::from_i64(k as i64));
    }
    c
}

/// Horner evaluation of a coefficient list (lowest degree first).
pub fn eval_poly<R: Scalar>(coeffs: &[R], x: &R) -> R {
    coeffs
        .iter()
        .rev()
        .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub fn to_nalgebra<F: Field>(m: &Matrix<F>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).to_c64())
}

/// All complex eigenvalues with repetition, from a complex Schur form.
pub fn complex_eigenvalues<F: Field>(m: &Matrix<F>) -> Vec<Complex64> {
    if m.rows() == 0 {
        return vec![];
    }
    let (_, t) = to_nalgebra(m).schur().unpack();
    t.diagonal().iter().copied().collect()
}

/// Groups nearby values; returns (representative, count) with the mean as
/// representative. Radius is relative to max(1, |value|).
pub fn cluster_values(vals: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for &v in vals {
        match groups
            .iter_mut()
            .find(|(c, _)| (c - v).norm() <= radius * c.norm().max(1.0))
        {
            Some((c, members)) => {
                members.push(v);
                *c = members.iter().sum::<Complex64>() / members.len() as f64;
            }
            None => groups.push((v, vec![v])),
        }
    }
    groups.into_iter().map(|(c, m)| (c, m.len())).collect()
}

/// Distinct eigenvalues lying in `F`, each with its algebraic multiplicity,
/// plus a flag telling whether every eigenvalue was found in `F`.
///
/// Exact fields: numeric roots are recognized and confirmed by exact
/// evaluation of the characteristic polynomial.
pub fn field_eigenvalues<F: Field>(m: &Matrix<F>) -> (Vec<(F, usize)>, bool) {
    let d = m.rows();
    let vals = complex_eigenvalues(m);
    if !F::EXACT {
        let radius = tolerance().sqrt().max(1e-6);
        let groups = cluster_values(&vals, radius);
        return (
            groups
                .into_iter()
                .map(|(c, k)| (F::recognize(c).expect("numeric field"), k))
                .collect(),
            true,
        );
    }
    let cp = charpoly(m);
    let groups = cluster_values(&vals, 1e-4);
    let mut out: Vec<(F, usize)> = Vec::new();
    let mut found = 0;
    for (c, _) in groups {
        let Some(r) = F::recognize(c) else { continue };
        if !eval_poly(&cp, &r).is_zero() || out.iter().any(|(x, _)| *x == r) {
            continue;
        }
        let k = root_multiplicity(&cp, &r);
        found += k;
        out.push((r, k));
    }
    (out, found == d)
}

/// Largest k with (x − r)^k dividing p.
pub fn root_multiplicity<F: Field>(p: &[F], r: &F) -> usize {
    let mut p = p.to_vec();
    let mut k = 0;
    while p.len() > 1 && eval_poly(&p, r).is_zero() {
        // synthetic division by (x − r)
        let deg = p.len() - 1;
        let mut q = vec![F::zero(); deg];
        let mut carry = F::zero();
        for i in (0..deg).rev() {
            carry = p[i + 1].clone() + carry * r.clone();
            q[i] = carry.clone();
        }
        p = q;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{CycRat, C64};

    fn q(v: i64) -> CycRat {
        CycRat::from_i64(v)
    }

    #[test]
    fn charpoly_of_companion() {
        // x^3 - 2x^2 - 5x + 6 = (x-1)(x+2)(x-3)
        let m = Matrix::from_rows(vec![
            vec![q(0), q(0), q(-6)],
            vec![q(1), q(0), q(5)],
            vec![q(0), q(1), q(2)],
        ])
        .unwrap();
        assert_eq!(charpoly(&m), vec![q(6), q(-5), q(-2), q(1)]);
        let (ev, all) = field_eigenvalues(&m);
        assert!(all);
        let mut got: Vec<CycRat> = ev.into_iter().map(|(x, _)| x).collect();
        got.sort_by(|a, b| a.to_c64().re.total_cmp(&b.to_c64().re));
        assert_eq!(got, vec![q(-2), q(1), q(3)]);
    }

    #[test]
    fn multiplicities_and_omega() {
        let w = CycRat::omega();
        let m = Matrix::from_rows(vec![
            vec![w.clone(), q(1), q(0)],
            vec![q(0), w.clone(), q(0)],
            vec![q(0), q(0), q(2)],
        ])
        .unwrap();
        let (ev, all) = field_eigenvalues(&m);
        assert!(all);
        assert!(ev.contains(&(w, 2)));
        assert!(ev.contains(&(q(2), 1)));
        let rot = Matrix::from_rows(vec![vec![q(0), q(-2)], vec![q(1), q(0)]]).unwrap();
        let (ev, all) = field_eigenvalues(&rot);
        assert!(ev.is_empty() && !all);
    }

    #[test]
    fn numeric_eigenvalues() {
        let m = Matrix::from_rows(vec![
            vec![C64::new(0.0, 0.0), C64::new(2.0, 0.0)],
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        let (ev, _) = field_eigenvalues(&m);
        assert_eq!(ev.len(), 2);
        assert!(ev.iter().any(|(x, _)| (x.0 - 2f64.sqrt()).norm() < 1e-12));
    }
}
