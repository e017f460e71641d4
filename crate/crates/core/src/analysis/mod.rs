//! Checks on representations: relations, irreducibility, invariant subspaces,
//! intertwiners, eigenstructure, the center and non-faithfulness witnesses.

pub(crate) mod equiv;
mod span;

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_action::word_to_aut;
use crate::matrix::Matrix;
use crate::representation::Representation;
use crate::scalar::{tolerance, Field, Scalar};
use crate::word::{GenKind, Generator, GroupWord};

pub use equiv::{are_equivalent, intertwiners, Equivalence, IntertwinerSpace};
pub use span::{algebra_dimension, burnside_irreducible, find_invariant_subspace, spin, Echelon};

/// Equality in exact rings; in numeric rings entrywise deviation at most
/// `factor`·ε·max(1, largest entry).
pub fn same_matrix<R: Scalar>(a: &Matrix<R>, b: &Matrix<R>, factor: f64) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    if R::EXACT {
        return a == b;
    }
    let scale = a.max_magnitude().max(b.max_magnitude()).max(1.0);
    a.max_deviation(b) <= factor * tolerance() * scale
}

/// Generator images with lazily computed σ inverses.
pub struct WordEvaluator<'a, R: Scalar> {
    rep: &'a Representation<R>,
    sigma_inv: Vec<OnceLock<Result<Matrix<R>>>>,
}

impl<'a, R: Scalar> WordEvaluator<'a, R> {
    pub fn new(rep: &'a Representation<R>) -> Self {
        WordEvaluator {
            rep,
            sigma_inv: (0..rep.sigma.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    fn letter(&self, g: Generator) -> Result<&Matrix<R>> {
        if g.kind == GenKind::Sigma && g.power < 0 {
            self.rep.image(g.inverse())?;
            return self.sigma_inv[g.index - 1]
                .get_or_init(|| self.rep.sigma[g.index - 1].inverse())
                .as_ref()
                .map_err(Clone::clone);
        }
        self.rep.image(g)
    }

    /// Product of the letter images in reading order.
    pub fn eval(&self, w: &GroupWord) -> Result<Matrix<R>> {
        if w.n() != self.rep.n {
            return Err(Error::StrandMismatch(w.n(), self.rep.n));
        }
        let mut acc: Option<Matrix<R>> = None;
        for &g in w.letters() {
            let m = self.letter(g)?;
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => a.dot(m),
            });
        }
        Ok(acc.unwrap_or_else(|| Matrix::identity(self.rep.dim)))
    }
}

pub fn image_of_word<R: Scalar>(rep: &Representation<R>, w: &GroupWord) -> Result<Matrix<R>> {
    WordEvaluator::new(rep).eval(w)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub id: String,
    pub deviation: f64,
    #[serde(skip)]
    pub lhs: String,
    #[serde(skip)]
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub relations: usize,
    pub failures: Vec<RelationFailure>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every relator of the presentation (only the braid relations
/// when there are no α images).
pub fn check_relations<R: Scalar>(rep: &Representation<R>) -> VerificationReport {
    let rels = match crate::word::relators(rep.n) {
        Ok(r) => r,
        Err(_) => {
            return VerificationReport {
                relations: 0,
                failures: vec![],
            }
        }
    };
    let rels: Vec<_> = rels
        .into_iter()
        .filter(|r| rep.is_welded() || matches!(r.kind, 4 | 5))
        .collect();
    let ev = WordEvaluator::new(rep);
    let failures: Vec<RelationFailure> = rels
        .par_iter()
        .filter_map(|r| {
            let (l, rr) = match (ev.eval(&r.lhs), ev.eval(&r.rhs)) {
                (Ok(l), Ok(rr)) => (l, rr),
                (Err(e), _) | (_, Err(e)) => {
                    return Some(RelationFailure {
                        id: r.id.clone(),
                        deviation: f64::INFINITY,
                        lhs: e.to_string(),
                        rhs: String::new(),
                    })
                }
            };
            (!same_matrix(&l, &rr, 1.0)).then(|| RelationFailure {
                id: r.id.clone(),
                deviation: l.max_deviation(&rr),
                lhs: format!("{l:?}"),
                rhs: format!("{rr:?}"),
            })
        })
        .collect();
    VerificationReport {
        relations: rels.len(),
        failures,
    }
}

/// Multiplicities of the eigenvalues +1 and −1 of an involution.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenStructure {
    pub plus: usize,
    pub minus: usize,
}

impl fmt::Display for EigenStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{(+1, {}), (-1, {})}}", self.plus, self.minus)
    }
}

pub fn alpha_eigen_structure<F: Field>(rep: &Representation<F>, i: usize) -> Result<EigenStructure> {
    let a = rep.image(Generator::alpha(i))?;
    let id = Matrix::identity(rep.dim);
    if !same_matrix(&a.dot(a), &id, 1.0) {
        return Err(Error::NotInvolution(i));
    }
    Ok(EigenStructure {
        plus: rep.dim - a.minus(&id).rank(),
        minus: rep.dim - a.plus(&id).rank(),
    })
}

/// c with ρ(θ)ⁿ = c·I, if the power is scalar.
pub fn center_image<R: Scalar>(rep: &Representation<R>) -> Option<R> {
    let t = rep
        .sigma
        .iter()
        .fold(Matrix::identity(rep.dim), |acc, m| acc.dot(m));
    let tn = t.pow(rep.n as u32);
    let c = tn.get(0, 0).clone();
    same_matrix(&tn, &Matrix::scalar(rep.dim, c.clone()), 1.0).then_some(c)
}

/// A word certifying that a representation is not faithful.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub word: GroupWord,
    pub alpha_index: usize,
    /// Compact form, e.g. `theta theta theta a1 THETA THETA THETA a1`.
    pub text: String,
}

pub fn witness_text(n: usize, i: usize) -> String {
    let up = vec!["theta"; n].join(" ");
    let down = vec!["THETA"; n].join(" ");
    format!("{up} a{i} {down} a{i}")
}

/// Searches [θⁿ, α_i] for i = 1…n−1: nontrivial in the group, trivial in ρ.
pub fn nonfaithful_witness<R: Scalar>(rep: &Representation<R>) -> Result<Witness> {
    if !rep.is_welded() {
        return Err(Error::MissingAlphaImages);
    }
    if center_image(rep).is_none() {
        return Err(Error::ImageNotIdentity);
    }
    let n = rep.n;
    let tn = GroupWord::theta(n)?.pow(n as i32);
    let ev = WordEvaluator::new(rep);
    let id = Matrix::identity(rep.dim);
    for i in 1..n {
        let w = tn.commutator(&GroupWord::gen(n, Generator::alpha(i))?)?;
        if word_to_aut(&w)?.is_identity() {
            continue;
        }
        if same_matrix(&ev.eval(&w)?, &id, 1.0) {
            return Ok(Witness {
                word: w,
                alpha_index: i,
                text: witness_text(n, i),
            });
        }
    }
    Err(Error::NoWitnessFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{character, hat_beta, tau, tensor_with_character, tilde_beta, tilde_tau};
    use crate::scalar::{CycRat, Laurent};

    fn q(v: i64) -> CycRat {
        CycRat::from_i64(v)
    }

    #[test]
    fn word_images() {
        let r = tilde_beta(3, &Laurent::var("t")).unwrap();
        let e = GroupWord::empty(3);
        assert!(image_of_word(&r, &e).unwrap().is_identity());
        let aa = GroupWord::new(3, [Generator::alpha(1), Generator::alpha(1)]).unwrap();
        assert!(image_of_word(&r, &aa).unwrap().is_identity());
        let t3 = GroupWord::theta(3).unwrap().pow(3);
        let img = image_of_word(&tau(3, &q(2)).unwrap(), &t3).unwrap();
        assert_eq!(img, Matrix::scalar(3, q(4)));
        let s = GroupWord::parse("a1", 3).unwrap();
        assert_eq!(
            image_of_word(&tau(3, &q(2)).unwrap(), &s),
            Err(Error::MissingAlphaImages)
        );
    }

    #[test]
    fn relations_symbolic_and_corrupted() {
        let t = Laurent::var("t");
        let rep = hat_beta(5, &t).unwrap();
        let rep_ok = check_relations(&rep);
        assert!(rep_ok.ok());
        assert_eq!(rep_ok.relations, crate::word::relator_count(5));
        let mut bad = tilde_tau(4, &q(2), &q(3)).unwrap();
        bad.alpha[0] = Matrix::identity(4);
        let report = check_relations(&bad);
        assert!(report.failures.iter().any(|f| f.id.starts_with("(7)")));
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["failures"][0].get("lhs").is_none());
    }

    #[test]
    fn eigen_structures() {
        let b = tilde_beta(5, &q(2)).unwrap();
        assert_eq!(alpha_eigen_structure(&b, 1).unwrap(), EigenStructure { plus: 3, minus: 1 });
        let x = tensor_with_character(&tilde_beta(4, &q(2)).unwrap(), &q(1), -1).unwrap();
        assert_eq!(alpha_eigen_structure(&x, 2).unwrap(), EigenStructure { plus: 1, minus: 2 });
        let t = tilde_tau(3, &q(2), &q(7)).unwrap();
        assert_eq!(alpha_eigen_structure(&t, 1).unwrap(), EigenStructure { plus: 2, minus: 1 });
    }

    #[test]
    fn center_values() {
        assert_eq!(center_image(&tilde_beta(4, &q(2)).unwrap()), Some(q(16)));
        assert_eq!(center_image(&tilde_tau(3, &q(2), &q(5)).unwrap()), Some(q(4)));
        let mut odd = tau(3, &q(2)).unwrap();
        odd.sigma[1] = Matrix::identity(3);
        odd.sigma[0] = Matrix::from_rows(vec![
            vec![q(1), q(2), q(0)],
            vec![q(0), q(3), q(0)],
            vec![q(0), q(0), q(1)],
        ])
        .unwrap();
        assert_eq!(center_image(&odd), None);
    }

    #[test]
    fn witnesses() {
        let w = nonfaithful_witness(&tilde_beta(3, &q(2)).unwrap()).unwrap();
        assert_eq!(w.text, "theta theta theta a1 THETA THETA THETA a1");
        assert_eq!(w.word, GroupWord::parse(&w.text, 3).unwrap());
        let w = nonfaithful_witness(&tilde_tau(4, &q(3), &q(2)).unwrap()).unwrap();
        assert_eq!(w.word.n(), 4);
        let x = character(3, &q(5), -1).unwrap();
        assert_eq!(nonfaithful_witness(&x).unwrap().alpha_index, 1);
        assert_eq!(
            nonfaithful_witness(&tau(3, &q(2)).unwrap()),
            Err(Error::MissingAlphaImages)
        );
    }
}
