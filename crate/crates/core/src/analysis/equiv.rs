//! Intertwiner spaces and equivalence decisions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representation::{Representation, Restrict};
use crate::scalar::{tolerance, Field};

/// Basis of {P : P·g1 = g2·P for every paired generator}.
pub(crate) fn intertwiner_basis<F: Field>(g1: &[&Matrix<F>], g2: &[&Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    if g1.len() != g2.len() || g1.is_empty() {
        return Err(Error::ShapeMismatch("generator lists differ".into()));
    }
    let d = g1[0].rows();
    if g2[0].rows() != d {
        return Err(Error::ShapeMismatch(format!("dimensions {d} and {}", g2[0].rows())));
    }
    let dd = d * d;
    let mut sys = Matrix::<F>::zeros(g1.len() * dd, dd);
    for (t, (a, b)) in g1.iter().zip(g2).enumerate() {
        for i in 0..d {
            for j in 0..d {
                let row = t * dd + i * d + j;
                for k in 0..d {
                    let c = sys.get(row, i * d + k).clone() + a.get(k, j).clone();
                    sys.set(row, i * d + k, c);
                    let c = sys.get(row, k * d + j).clone() - b.get(i, k).clone();
                    sys.set(row, k * d + j, c);
                }
            }
        }
    }
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::from_fn(d, d, |r, c| v[r * d + c].clone()))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntertwinerSpace<F> {
    pub dim: usize,
    pub basis: Vec<Matrix<F>>,
}

fn paired<'a, F: Field>(
    rep1: &'a Representation<F>,
    rep2: &'a Representation<F>,
) -> Result<(Vec<&'a Matrix<F>>, Vec<&'a Matrix<F>>)> {
    if rep1.n != rep2.n {
        return Err(Error::StrandMismatch(rep1.n, rep2.n));
    }
    if rep1.is_welded() != rep2.is_welded() {
        return Err(Error::ShapeMismatch("only one representation has alpha images".into()));
    }
    Ok((rep1.images(Restrict::All), rep2.images(Restrict::All)))
}

/// All P with P·ρ₁(g) = ρ₂(g)·P on every generator.
pub fn intertwiners<F: Field>(
    rep1: &Representation<F>,
    rep2: &Representation<F>,
) -> Result<IntertwinerSpace<F>> {
    if rep1.dim != rep2.dim {
        return Ok(IntertwinerSpace {
            dim: 0,
            basis: vec![],
        });
    }
    let (g1, g2) = paired(rep1, rep2)?;
    let basis = intertwiner_basis(&g1, &g2)?;
    Ok(IntertwinerSpace {
        dim: basis.len(),
        basis,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Equivalence<F> {
    /// P with ρ₂ = P ρ₁ P⁻¹.
    Equivalent(Matrix<F>),
    NotEquivalent { intertwiner_dim: usize },
    Indeterminate(String),
}

impl<F> Equivalence<F> {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

/// Largest intertwining residual of `p`, relative to its size and the images.
fn residual<F: Field>(p: &Matrix<F>, g1: &[&Matrix<F>], g2: &[&Matrix<F>]) -> f64 {
    let scale = p.max_magnitude().max(f64::MIN_POSITIVE);
    g1.iter()
        .zip(g2)
        .map(|(a, b)| {
            let s = a.max_magnitude().max(b.max_magnitude()).max(1.0);
            p.dot(a).max_deviation(&b.dot(p)) / (scale * s)
        })
        .fold(0.0, f64::max)
}

pub fn are_equivalent<F: Field>(
    rep1: &Representation<F>,
    rep2: &Representation<F>,
) -> Result<Equivalence<F>> {
    let space = intertwiners(rep1, rep2)?;
    if space.dim == 0 {
        return Ok(Equivalence::NotEquivalent { intertwiner_dim: 0 });
    }
    let (g1, g2) = paired(rep1, rep2)?;
    let d = rep1.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(0xe9);
    let mut candidates = space.basis.clone();
    if space.dim > 1 {
        for _ in 0..16 {
            let mut c = Matrix::zeros(d, d);
            for b in &space.basis {
                c = c.plus(&b.scale(&F::from_i64(rng.random_range(-9..=9))));
            }
            candidates.push(c);
        }
    }
    let mut borderline = false;
    for p in candidates {
        if F::EXACT {
            if !p.det()?.is_zero() {
                return Ok(Equivalence::Equivalent(p));
            }
            continue;
        }
        if p.rank() < d {
            continue;
        }
        let r = residual(&p, &g1, &g2);
        if r <= tolerance() / 2.0 {
            return Ok(Equivalence::Equivalent(p));
        }
        if r <= tolerance() {
            borderline = true;
        }
    }
    if borderline {
        return Ok(Equivalence::Indeterminate(
            "intertwiner only verified at the working tolerance".into(),
        ));
    }
    Ok(Equivalence::NotEquivalent {
        intertwiner_dim: space.dim,
    })
}
