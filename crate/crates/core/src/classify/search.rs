//! Multi-start Levenberg–Marquardt search for every ρ(α₁) extending a fixed
//! irreducible braid representation.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{identify_extension, Classification};
use crate::analysis::equiv::intertwiner_basis;
use crate::eigen::to_nalgebra;
use crate::error::{Error, Result};
use crate::families::{burau_w, tau};
use crate::json::{complex_matrix_to_json, JsonScalar};
use crate::matrix::Matrix;
use crate::representation::Representation;
use crate::scalar::C64;
use crate::word::{relators, GenKind};

type CMat = DMatrix<Complex64>;

const POLISH_STEPS: usize = 60;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RestrictionKind {
    Burau,
    Tau,
}

impl fmt::Display for RestrictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RestrictionKind::Burau => "burau",
            RestrictionKind::Tau => "tau",
        })
    }
}

impl FromStr for RestrictionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "burau" => Ok(RestrictionKind::Burau),
            "tau" | "standard" => Ok(RestrictionKind::Tau),
            other => Err(Error::BadParams(format!("unknown restriction '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub restriction: RestrictionKind,
    pub z: C64,
    pub starts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Convergence threshold on the largest residual entry.
    pub solver_tol: f64,
    /// Frobenius radius for merging solutions.
    pub cluster_radius: f64,
}

impl SearchConfig {
    pub fn new(n: usize, restriction: RestrictionKind, z: C64) -> Self {
        SearchConfig {
            n,
            restriction,
            z,
            starts: 500,
            seed: 1,
            max_iter: 200,
            solver_tol: 1e-10,
            cluster_radius: 1e-6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchCluster {
    pub a1: Matrix<C64>,
    pub residual: f64,
    /// Real dimension of the local solution set.
    pub manifold_dim: usize,
    pub members: usize,
    pub classification: Option<Classification<C64>>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub restriction: RestrictionKind,
    pub z: C64,
    pub seed: u64,
    pub starts: usize,
    pub converged: usize,
    pub clusters: Vec<SearchCluster>,
    pub notes: Vec<String>,
}

impl SearchReport {
    /// Whether every cluster was identified.
    pub fn complete(&self) -> bool {
        self.clusters.iter().all(|c| c.classification.is_some())
    }

    pub fn to_json(&self) -> Value {
        let clusters: Vec<Value> = self
            .clusters
            .iter()
            .map(|c| {
                json!({
                    "A1": complex_matrix_to_json(&c.a1),
                    "residual": c.residual,
                    "manifold_dim": c.manifold_dim,
                    "members": c.members,
                    "family": c.classification.as_ref().map_or(Value::Null, |k| k.to_json()),
                    "error": c.error,
                })
            })
            .collect();
        json!({
            "n": self.n,
            "restriction": self.restriction.to_string(),
            "z": C64::scalar_json(&self.z),
            "seed": self.seed,
            "starts": self.starts,
            "converged": self.converged,
            "clusters": clusters,
            "notes": self.notes,
        })
    }
}

enum Letter {
    Fixed(usize),
    /// α_i: T^{i−1}·A·T^{1−i}
    Alpha(usize),
}

struct System {
    d: usize,
    fixed: Vec<CMat>,
    tpow: Vec<CMat>,
    tinvpow: Vec<CMat>,
    relators: Vec<(Vec<Letter>, Vec<Letter>)>,
}

impl System {
    fn new(rep: &Representation<C64>) -> Result<Self> {
        let n = rep.n;
        let d = rep.dim;
        let mut fixed = Vec::new();
        for s in &rep.sigma {
            fixed.push(to_nalgebra(s));
            fixed.push(to_nalgebra(&s.inverse()?));
        }
        let t = rep.sigma.iter().fold(CMat::identity(d, d), |acc, m| acc * to_nalgebra(m));
        let tinv = t.clone().try_inverse().ok_or(Error::Singular)?;
        let mut tpow = vec![CMat::identity(d, d)];
        let mut tinvpow = vec![CMat::identity(d, d)];
        for _ in 1..n {
            tpow.push(tpow.last().expect("nonempty") * &t);
            tinvpow.push(tinvpow.last().expect("nonempty") * &tinv);
        }
        let conv = |w: &crate::word::GroupWord| -> Vec<Letter> {
            w.letters()
                .iter()
                .map(|g| match g.kind {
                    GenKind::Alpha => Letter::Alpha(g.index),
                    _ => Letter::Fixed(2 * (g.index - 1) + usize::from(g.power < 0)),
                })
                .collect()
        };
        let relators = relators(n)?
            .iter()
            .filter(|r| r.lhs.uses_alpha() || r.rhs.uses_alpha())
            .map(|r| (conv(&r.lhs), conv(&r.rhs)))
            .collect();
        Ok(System {
            d,
            fixed,
            tpow,
            tinvpow,
            relators,
        })
    }

    fn alpha(&self, a: &CMat, i: usize) -> CMat {
        &self.tpow[i - 1] * a * &self.tinvpow[i - 1]
    }

    fn letter(&self, l: &Letter, alphas: &[CMat]) -> CMat {
        match l {
            Letter::Fixed(k) => self.fixed[*k].clone(),
            Letter::Alpha(i) => alphas[*i - 1].clone(),
        }
    }

    fn alphas(&self, a: &CMat) -> Vec<CMat> {
        (1..self.tpow.len()).map(|i| self.alpha(a, i)).collect()
    }

    fn residual(&self, a: &CMat) -> DVector<Complex64> {
        let d = self.d;
        let alphas = self.alphas(a);
        let mut r = DVector::zeros(self.relators.len() * d * d);
        for (k, (lhs, rhs)) in self.relators.iter().enumerate() {
            let prod = |w: &[Letter]| w.iter().fold(CMat::identity(d, d), |acc, l| acc * self.letter(l, &alphas));
            let diff = prod(lhs) - prod(rhs);
            for i in 0..d {
                for j in 0..d {
                    r[k * d * d + i * d + j] = diff[(i, j)];
                }
            }
        }
        r
    }

    /// Adds the derivative of the word product to the Jacobian block `row0`.
    fn add_word_jacobian(&self, w: &[Letter], alphas: &[CMat], sign: f64, row0: usize, jac: &mut CMat) {
        let d = self.d;
        let mats: Vec<CMat> = w.iter().map(|l| self.letter(l, alphas)).collect();
        let m = mats.len();
        let mut prefix = vec![CMat::identity(d, d)];
        for x in &mats {
            prefix.push(prefix.last().expect("nonempty") * x);
        }
        let mut suffix = vec![CMat::identity(d, d); m + 1];
        for j in (0..m).rev() {
            suffix[j] = &mats[j] * &suffix[j + 1];
        }
        for (j, l) in w.iter().enumerate() {
            let Letter::Alpha(i) = l else { continue };
            let x = &prefix[j] * &self.tpow[*i - 1];
            let y = &self.tinvpow[*i - 1] * &suffix[j + 1];
            for r in 0..d {
                for s in 0..d {
                    let row = row0 + r * d + s;
                    for p in 0..d {
                        for q in 0..d {
                            jac[(row, p * d + q)] += x[(r, p)] * y[(q, s)] * sign;
                        }
                    }
                }
            }
        }
    }

    fn jacobian(&self, a: &CMat) -> CMat {
        let d = self.d;
        let alphas = self.alphas(a);
        let mut jac = CMat::zeros(self.relators.len() * d * d, d * d);
        for (k, (lhs, rhs)) in self.relators.iter().enumerate() {
            self.add_word_jacobian(lhs, &alphas, 1.0, k * d * d, &mut jac);
            self.add_word_jacobian(rhs, &alphas, -1.0, k * d * d, &mut jac);
        }
        jac
    }
}

fn max_abs(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Damped Gauss–Newton from `a`; returns the final point and its residual.
fn levenberg_marquardt(sys: &System, mut a: CMat, max_iter: usize, tol: f64) -> (CMat, f64) {
    let d = sys.d;
    let mut r = sys.residual(&a);
    let mut cost = r.norm_squared();
    let mut mu = 1e-2;
    // Iterates past `tol` so that solutions at double roots land close to the root.
    let mut polish = 0;
    for _ in 0..max_iter {
        if !cost.is_finite() || cost == 0.0 {
            break;
        }
        if max_abs(&r) <= tol {
            polish += 1;
            if polish > POLISH_STEPS {
                break;
            }
        }
        let j = sys.jacobian(&a);
        let jh = j.adjoint();
        let g = &jh * &r;
        let h = &jh * &j;
        let mut improved = false;
        for _ in 0..12 {
            let mut hm = h.clone();
            for i in 0..d * d {
                hm[(i, i)] += Complex64::new(mu, 0.0);
            }
            let Some(step) = hm.lu().solve(&(-&g)) else {
                mu *= 4.0;
                continue;
            };
            let cand = &a + CMat::from_column_slice(d, d, step.as_slice()).transpose();
            let rc = sys.residual(&cand);
            let cc = rc.norm_squared();
            if cc.is_finite() && cc < cost {
                let moved = step.norm() > 1e-12 * (1.0 + a.norm());
                improved = polish == 0 || (moved && cc < 0.5 * cost);
                a = cand;
                r = rc;
                cost = cc;
                mu = (mu / 3.0).max(1e-15);
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    let res = max_abs(&r);
    (a, res)
}

fn random_start(d: usize, seed: u64, start: usize) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    CMat::from_fn(d, d, |_, _| {
        Complex64::new(rng.random_range(-1.5..=1.5), rng.random_range(-1.5..=1.5))
    })
}

fn from_nalgebra(m: &CMat) -> Matrix<C64> {
    Matrix::from_fn(m.nrows(), m.ncols(), |r, c| C64(m[(r, c)]))
}

fn lex_key(m: &Matrix<C64>) -> Vec<f64> {
    m.data().iter().flat_map(|x| [x.0.re, x.0.im]).collect()
}

/// Searches for all ρ(α₁) extending the canonical braid representation at `z`.
pub fn extension_search(cfg: &SearchConfig) -> Result<SearchReport> {
    let n = cfg.n;
    if n < 3 {
        return Err(Error::BadStrandCount { n, min: 3 });
    }
    if cfg.starts == 0 {
        return Err(Error::BadParams("starts must be at least 1".into()));
    }
    let z = cfg.z;
    let eps = crate::scalar::tolerance().max(1e-12);
    let base = match cfg.restriction {
        RestrictionKind::Burau => {
            let p: Complex64 = (0..n).map(|k| z.0.powu(k as u32)).sum();
            if p.norm() <= 1e3 * eps {
                return Err(Error::BadParams(format!("P_{n}(z) = 0 at z = {z}")));
            }
            burau_w(n, &z)?
        }
        RestrictionKind::Tau => {
            if (z.0 - 1.0).norm() <= 1e3 * eps {
                return Err(Error::BadParams("z = 1 makes tau reducible".into()));
            }
            tau(n, &z)?
        }
    };
    if z.0.norm() <= eps {
        return Err(Error::BadParams("z must be invertible".into()));
    }
    let sys = System::new(&base)?;
    let d = sys.d;

    let results: Vec<(CMat, f64)> = (0..cfg.starts)
        .into_par_iter()
        .map(|s| levenberg_marquardt(&sys, random_start(d, cfg.seed, s), cfg.max_iter, cfg.solver_tol))
        .collect();

    let mut groups: Vec<(CMat, f64, usize)> = Vec::new();
    let mut converged = 0;
    for (a, res) in results {
        if !(res <= cfg.solver_tol) {
            continue;
        }
        converged += 1;
        match groups.iter_mut().find(|(rep, _, _)| (rep - &a).norm() <= cfg.cluster_radius) {
            Some(g) => {
                g.2 += 1;
                if res < g.1 {
                    g.0 = a;
                    g.1 = res;
                }
            }
            None => groups.push((a, res, 1)),
        }
    }

    let mut clusters: Vec<SearchCluster> = groups
        .into_par_iter()
        .map(|(a, residual, members)| {
            let jac = sys.jacobian(&a);
            let sv = jac.singular_values();
            let top = sv.iter().copied().fold(0.0, f64::max);
            let null = sv.len() - sv.iter().filter(|&&s| s > 1e-6 * top).count();
            let rep = Representation {
                n,
                dim: d,
                sigma: base.sigma.clone(),
                alpha: (1..n).map(|i| from_nalgebra(&sys.alpha(&a, i))).collect(),
                label: None,
            };
            let (classification, error) = match identify_extension(&rep) {
                Ok(c) => (Some(c), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SearchCluster {
                a1: from_nalgebra(&a),
                residual,
                manifold_dim: 2 * null,
                members,
                classification,
                error,
            }
        })
        .collect();
    clusters.sort_by(|x, y| {
        x.residual
            .total_cmp(&y.residual)
            .then_with(|| {
                lex_key(&x.a1)
                    .iter()
                    .zip(lex_key(&y.a1))
                    .map(|(p, q)| p.total_cmp(&q))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });

    let mut notes = Vec::new();
    if clusters.len() <= 32 {
        let sig: Vec<&Matrix<C64>> = base.sigma.iter().collect();
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let mut g1 = sig.clone();
                let mut g2 = sig.clone();
                g1.push(&clusters[i].a1);
                g2.push(&clusters[j].a1);
                if !intertwiner_basis(&g1, &g2)?.is_empty() {
                    notes.push(format!("clusters {i} and {j} are equivalent"));
                }
            }
        }
    } else {
        notes.push(format!("{} clusters, pairwise equivalence re-check skipped", clusters.len()));
    }
    Ok(SearchReport {
        n,
        restriction: cfg.restriction,
        z,
        seed: cfg.seed,
        starts: cfg.starts,
        converged,
        clusters,
        notes,
    })
}
