//! Incremental spans, the generated-algebra test and invariant subspaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::field_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representation::{Representation, Restrict};
use crate::scalar::{tolerance, Field};

use super::equiv::intertwiner_basis;

/// Vectors in echelon form, each normalized to 1 at its pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    len: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|(_, v)| v.clone()).collect()
    }

    fn max_entry(v: &[F]) -> f64 {
        v.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    /// Residual of `v` after elimination against the current rows.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        if !F::EXACT {
            let m = Self::max_entry(&v);
            if m > 0.0 {
                let s = F::recognize((1.0 / m).into()).expect("numeric");
                v.iter_mut().for_each(|x| *x = x.clone() * s.clone());
            }
        }
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() && F::EXACT {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * r.clone();
            }
            v[*p] = F::zero();
        }
        v
    }

    fn independent_pivot(v: &[F]) -> Option<usize> {
        if F::EXACT {
            v.iter().position(|x| !x.is_zero())
        } else {
            let (p, m) = v
                .iter()
                .enumerate()
                .map(|(i, x)| (i, x.magnitude()))
                .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
            (m > span_tolerance()).then_some(p)
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        Self::independent_pivot(&self.reduce(v.to_vec())).is_none()
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let r = self.reduce(v);
        let Some(p) = Self::independent_pivot(&r) else {
            return false;
        };
        let inv = r[p].inv();
        let mut r: Vec<F> = r.into_iter().map(|x| x * inv.clone()).collect();
        r[p] = F::one();
        // keep rows reduced at the new pivot so later eliminations stay sequential
        for (_, row) in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                *x = x.clone() - f.clone() * y.clone();
            }
            row[p] = F::zero();
        }
        self.rows.push((p, r));
        true
    }
}

/// Relative threshold for numeric independence after normalization.
fn span_tolerance() -> f64 {
    tolerance() * 1e3
}

/// Smallest subspace containing `seeds` and closed under `gens`.
pub fn spin<F: Field>(seeds: &[Vec<F>], gens: &[&Matrix<F>]) -> Echelon<F> {
    let len = seeds.first().map_or(0, Vec::len);
    let mut e = Echelon::new(len);
    let mut queue: Vec<Vec<F>> = Vec::new();
    for s in seeds {
        if e.insert(s.clone()) {
            queue.push(e.rows.last().expect("just inserted").1.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            if e.is_full() {
                return e;
            }
            if e.insert(g.apply(&v)) {
                queue.push(e.rows.last().expect("just inserted").1.clone());
            }
        }
    }
    e
}

fn require_evaluated<F: Field>(rep: &Representation<F>, sel: Restrict) -> Result<Vec<&Matrix<F>>> {
    let gens = rep.images(sel);
    if gens.is_empty() {
        return Err(Error::MissingAlphaImages);
    }
    Ok(gens)
}

/// Dimension of the algebra spanned by products of the selected images.
pub fn algebra_dimension<F: Field>(rep: &Representation<F>, sel: Restrict) -> Result<usize> {
    let gens = require_evaluated(rep, sel)?;
    let d = rep.dim;
    let mut e = Echelon::new(d * d);
    let mut queue = Vec::new();
    e.insert(Matrix::<F>::identity(d).data().to_vec());
    queue.push(e.rows[0].1.clone());
    while let Some(v) = queue.pop() {
        let b = Matrix::from_fn(d, d, |r, c| v[r * d + c].clone());
        for g in &gens {
            if e.is_full() {
                return Ok(e.dim());
            }
            if e.insert(g.dot(&b).data().to_vec()) {
                queue.push(e.rows.last().expect("just inserted").1.clone());
            }
        }
    }
    Ok(e.dim())
}

/// Burnside: irreducible iff the images span the full matrix algebra.
pub fn burnside_irreducible<F: Field>(rep: &Representation<F>, sel: Restrict) -> Result<bool> {
    Ok(algebra_dimension(rep, sel)? == rep.dim * rep.dim)
}

fn is_invariant<F: Field>(basis: &[Vec<F>], gens: &[&Matrix<F>]) -> bool {
    let e = spin(basis, &[]);
    e.dim() == basis.len() && basis.iter().all(|v| gens.iter().all(|g| e.contains(&g.apply(v))))
}

fn proper<F: Field>(basis: &[Vec<F>], d: usize) -> bool {
    !basis.is_empty() && basis.len() < d
}

fn eigenvectors<F: Field>(a: &Matrix<F>, rational: &mut bool) -> Vec<Vec<Vec<F>>> {
    let (vals, all) = field_eigenvalues(a);
    *rational &= all;
    vals.into_iter()
        .map(|(l, _)| a.minus(&Matrix::scalar(a.rows(), l)).kernel_basis())
        .filter(|k| !k.is_empty())
        .collect()
}

fn random_element<F: Field>(gens: &[&Matrix<F>], rng: &mut ChaCha8Rng) -> Matrix<F> {
    let d = gens[0].rows();
    let mut m = Matrix::scalar(d, F::from_i64(rng.random_range(-2..=2)));
    for g in gens {
        m = m.plus(&g.scale(&F::from_i64(rng.random_range(-3..=3))));
    }
    for _ in 0..2 {
        let a = gens[rng.random_range(0..gens.len())];
        let b = gens[rng.random_range(0..gens.len())];
        m = m.plus(&a.dot(b).scale(&F::from_i64(rng.random_range(1..=3))));
    }
    m
}

/// Annihilator {x : u·x = 0 for all u in `rows`}.
fn annihilator<F: Field>(rows: &[Vec<F>], d: usize) -> Vec<Vec<F>> {
    let m = Matrix::from_fn(rows.len(), d, |r, c| rows[r][c].clone());
    m.kernel_basis()
}

/// A proper nonzero invariant subspace, or `None` when the selected images
/// act irreducibly.
///
/// Tries eigenspaces of the commutant first (smallest dimension wins), then
/// spins eigenvectors of generators and of random algebra elements, both
/// for the images and for their transposes.
pub fn find_invariant_subspace<F: Field>(
    rep: &Representation<F>,
    sel: Restrict,
) -> Result<Option<Vec<Vec<F>>>> {
    if burnside_irreducible(rep, sel)? {
        return Ok(None);
    }
    let gens = require_evaluated(rep, sel)?;
    let d = rep.dim;
    let mut rational = true;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let commutant = intertwiner_basis(&gens, &gens)?;
    if commutant.len() > 1 {
        let mut tries: Vec<Matrix<F>> = commutant[1..].to_vec();
        for _ in 0..4 {
            let mut c = Matrix::zeros(d, d);
            for b in &commutant {
                c = c.plus(&b.scale(&F::from_i64(rng.random_range(-4..=4))));
            }
            tries.push(c);
        }
        let mut best: Option<Vec<Vec<F>>> = None;
        for c in &tries {
            for space in eigenvectors(c, &mut rational) {
                if proper(&space, d)
                    && is_invariant(&space, &gens)
                    && best.as_ref().is_none_or(|b| space.len() < b.len())
                {
                    best = Some(space);
                }
            }
            if best.as_ref().is_some_and(|b| b.len() == 1) {
                break;
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }

    let transposed: Vec<Matrix<F>> = gens.iter().map(|g| g.transpose()).collect();
    let tgens: Vec<&Matrix<F>> = transposed.iter().collect();
    let mut candidates: Vec<Matrix<F>> = gens.iter().map(|g| (*g).clone()).collect();
    for _ in 0..12 {
        candidates.push(random_element(&gens, &mut rng));
    }
    for a in &candidates {
        for space in eigenvectors(a, &mut rational) {
            for v in &space {
                let s = spin(std::slice::from_ref(v), &gens);
                if s.dim() < d && is_invariant(&s.vectors(), &gens) {
                    return Ok(Some(s.vectors()));
                }
            }
        }
        let at = a.transpose();
        for space in eigenvectors(&at, &mut rational) {
            for u in &space {
                let s = spin(std::slice::from_ref(u), &tgens);
                if s.dim() < d {
                    let w = annihilator(&s.vectors(), d);
                    if proper(&w, d) && is_invariant(&w, &gens) {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Err(if rational {
        Error::SearchExhausted
    } else {
        Error::SubspaceNotRational
    })
}
