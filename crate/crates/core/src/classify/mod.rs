//! Identification of extensions of irreducible Burau and standard
//! representations, a numeric search for all extensions, and the pairwise
//! (non-)equivalence table.

mod distinct;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{same_matrix, Echelon};
use crate::error::{Error, Result};
use crate::families::{
    burau_w, hat_beta, psi3, psi3_lambda_from_point, q_change_of_basis, tau, tensor_with_character, tilde_beta,
    tilde_tau, Family,
};
use crate::json::JsonScalar;
use crate::matrix::Matrix;
use crate::representation::Representation;
use crate::scalar::Field;

pub use distinct::{verify_pairwise_distinctness, DistinctnessReport, PairOutcome};
pub use search::{extension_search, RestrictionKind, SearchCluster, SearchConfig, SearchReport};

/// Relative tolerance factor for numeric intertwining checks.
const CHECK_FACTOR: f64 = 1e3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "T3.25")]
    T3_25,
    #[serde(rename = "T4.11")]
    T4_11,
    #[serde(rename = "T5.9")]
    T5_9,
    #[serde(rename = "T6.2")]
    T6_2,
    #[serde(rename = "T6.3")]
    T6_3,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::T3_25 => "T3.25",
            Theorem::T4_11 => "T4.11",
            Theorem::T5_9 => "T5.9",
            Theorem::T6_2 => "T6.2",
            Theorem::T6_3 => "T6.3",
        })
    }
}

/// ρ ≅ X_n(y, k) ⊗ family(z, λ, x), with `certificate` carrying ρ to it.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification<F> {
    pub theorem: Theorem,
    pub n: usize,
    pub family: Family,
    pub y: F,
    pub k: i64,
    pub z: F,
    pub lambda: Option<F>,
    pub x: Option<F>,
    /// C with C·ρ(g)·C⁻¹ equal to the canonical representative.
    pub certificate: Matrix<F>,
}

impl<F: Field> Classification<F> {
    /// X_n(y, k) ⊗ family at the recovered parameters.
    pub fn canonical(&self) -> Result<Representation<F>> {
        let base = match self.family {
            Family::TildeBeta => tilde_beta(self.n, &self.z)?,
            Family::HatBeta => hat_beta(self.n, &self.z)?,
            Family::TildeTau => tilde_tau(self.n, &self.z, self.lambda.as_ref().expect("lambda"))?,
            Family::Psi3 => psi3(
                &self.z,
                self.lambda.as_ref().expect("lambda"),
                self.x.as_ref().expect("x"),
            )?,
            other => return Err(Error::BadParams(format!("{other} is not an extension family"))),
        };
        tensor_with_character(&base, &self.y, self.k)
    }
}

impl<F: Field + JsonScalar> Classification<F> {
    pub fn to_json(&self) -> Value {
        let opt = |v: &Option<F>| v.as_ref().map_or(Value::Null, F::scalar_json);
        json!({
            "theorem": self.theorem,
            "n": self.n,
            "family": self.family.name(),
            "y": F::scalar_json(&self.y),
            "k": self.k,
            "z": F::scalar_json(&self.z),
            "lambda": opt(&self.lambda),
            "x": opt(&self.x),
            "certificate": F::matrix_json(&self.certificate),
        })
    }
}

impl<F: Field> fmt::Display for Classification<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: X_{}({}, {}) (x) {}(z = {}",
            self.theorem, self.n, self.y, self.k, self.family, self.z
        )?;
        if let Some(l) = &self.lambda {
            write!(f, ", lambda = {l}")?;
        }
        if let Some(x) = &self.x {
            write!(f, ", x = {x}")?;
        }
        write!(f, ")")
    }
}

fn not_ext(msg: impl Into<String>) -> Error {
    Error::NotAnExtension(msg.into())
}

fn vec_of<F: Field>(m: &Matrix<F>) -> Vec<F> {
    m.data().to_vec()
}

/// Solves Σ c_j·B_j = target for the listed powers; requires a unique solution.
fn min_poly_coeffs<F: Field>(powers: &[Matrix<F>], target: &Matrix<F>) -> Result<Vec<F>> {
    let cols: Vec<Vec<F>> = powers.iter().map(vec_of).collect();
    let a = Matrix::from_columns(&cols)?;
    let b = Matrix::from_columns(&[vec_of(target)])?;
    let sol = a
        .solve(&b)
        .map_err(|_| not_ext("sigma_1 has the wrong minimal polynomial"))?;
    if !sol.null_space.is_empty() {
        return Err(not_ext("sigma_1 has too few distinct eigenvalues"));
    }
    Ok(sol.particular.column(0))
}

/// Character value y and parameter z from the minimal polynomial of ρ(σ₁).
fn recover_yz<F: Field>(g: &Matrix<F>, burau: bool) -> Result<(F, F)> {
    let d = g.rows();
    let id = Matrix::identity(d);
    let g2 = g.dot(g);
    let (y, z) = if burau {
        // G² = c1·G + c0·I with c1 = y(1 − z), c0 = y²z
        let c = min_poly_coeffs(&[g.clone(), id], &g2)?;
        let y = (g.trace() - c[0].clone()).div(&F::from_i64(d as i64 - 2));
        if y.is_zero() {
            return Err(not_ext("degenerate character value"));
        }
        let z = c[1].div(&(y.clone() * y.clone()));
        (y, z)
    } else {
        // G³ = c2·G² + c1·G + c0·I with c2 = y, c1 = y²z
        let c = min_poly_coeffs(&[g2.clone(), g.clone(), id], &g2.dot(g))?;
        let y = c[0].clone();
        if y.is_zero() {
            return Err(not_ext("degenerate character value"));
        }
        let z = c[1].div(&(y.clone() * y.clone()));
        (y, z)
    };
    let det = g.det()?;
    let expect = -(z.clone() * y.pow_i(d as i64)?);
    if !close(&det, &expect) {
        return Err(not_ext("det(sigma_1) does not match -z*y^dim"));
    }
    Ok((y, z))
}

fn close<F: Field>(a: &F, b: &F) -> bool {
    if F::EXACT {
        a == b
    } else {
        let s = a.magnitude().max(b.magnitude()).max(1.0);
        (a.clone() - b.clone()).magnitude() <= CHECK_FACTOR * crate::scalar::tolerance() * s
    }
}

/// The line ∩_{i≥2} Ker(g_i − I).
fn anchor<F: Field>(gens: &[Matrix<F>]) -> Result<Vec<F>> {
    let d = gens[0].rows();
    let id = Matrix::identity(d);
    let parts: Vec<Matrix<F>> = gens[1..].iter().map(|g| g.minus(&id)).collect();
    let refs: Vec<&Matrix<F>> = parts.iter().collect();
    let k = Matrix::vstack(&refs)?.kernel_basis();
    if k.len() != 1 {
        return Err(not_ext(format!("fixed space of sigma_2.. has dimension {}", k.len())));
    }
    Ok(k.into_iter().next().expect("one vector"))
}

/// Spins `seed` under `gens`, recording for each new basis vector its parent
/// and the generator applied.
fn spin_words<F: Field>(seed: Vec<F>, gens: &[Matrix<F>]) -> (Vec<Vec<F>>, Vec<(usize, usize)>) {
    let mut e = Echelon::new(seed.len());
    e.insert(seed.clone());
    let mut raw = vec![seed];
    let mut steps = vec![(usize::MAX, usize::MAX)];
    let mut head = 0;
    while head < raw.len() && !e.is_full() {
        for (gi, g) in gens.iter().enumerate() {
            let w = g.apply(&raw[head]);
            if e.insert(w.clone()) {
                raw.push(w);
                steps.push((head, gi));
            }
        }
        head += 1;
    }
    (raw, steps)
}

fn replay<F: Field>(seed: Vec<F>, gens: &[Matrix<F>], steps: &[(usize, usize)]) -> Vec<Vec<F>> {
    let mut out = vec![seed];
    for &(parent, gi) in &steps[1..] {
        let v = gens[gi].apply(&out[parent]);
        out.push(v);
    }
    out
}

fn intertwines<F: Field>(p: &Matrix<F>, src: &[&Matrix<F>], dst: &[&Matrix<F>]) -> bool {
    src.iter()
        .zip(dst)
        .all(|(a, b)| same_matrix(&p.dot(a), &b.dot(p), CHECK_FACTOR * p.max_magnitude().max(1.0)))
}

/// P with P·src_i = dst_i·P, built from matching spins of the anchor lines.
fn spin_intertwiner<F: Field>(src: &[Matrix<F>], dst: &[Matrix<F>]) -> Result<Matrix<F>> {
    let d = dst[0].rows();
    let (bd, steps) = spin_words(anchor(dst)?, dst);
    if bd.len() != d {
        return Err(not_ext("canonical restriction is reducible"));
    }
    let bs = replay(anchor(src)?, src, &steps);
    let bd = Matrix::from_columns(&bd)?;
    let bs = Matrix::from_columns(&bs)?;
    let p = bd.dot(&bs.inverse().map_err(|_| not_ext("restriction is not equivalent to the canonical one"))?);
    let s: Vec<&Matrix<F>> = src.iter().collect();
    let t: Vec<&Matrix<F>> = dst.iter().collect();
    if !intertwines(&p, &s, &t) {
        return Err(not_ext("restriction is not equivalent to the canonical one"));
    }
    Ok(p)
}

fn poly_p_value<F: Field>(n: usize, z: &F) -> F {
    (0..n).fold((F::zero(), F::one()), |(s, p), _| (s + p.clone(), p * z.clone())).0
}

/// Entries of the descaled, canonicalized ρ(α₁) as a ψ₃ point: (a, b, c, x).
fn psi3_point<F: Field>(a1: &Matrix<F>, z: &F) -> Result<(F, F, F, F)> {
    let (a, c, b) = (a1.get(0, 0).clone(), a1.get(1, 1).clone(), a1.get(2, 2).clone());
    let big = |v: &F| !v.negligible(1.0);
    let x = if big(&a) && a.magnitude() >= b.magnitude().max(c.magnitude()) / 4.0 {
        a1.get(2, 1).div(&a)
    } else if big(&b) && b.magnitude() >= c.magnitude() / 4.0 {
        a1.get(1, 0).div(&b)
    } else if big(&c) {
        // x² = entry/c and x³ = 1/z²
        (z.clone() * z.clone()).inv().div(&a1.get(2, 0).div(&c))
    } else {
        return Err(not_ext("alpha_1 has no psi3 shape"));
    };
    Ok((a, b, c, x))
}

/// Identifies X_n(y, k) ⊗ family(z, …) for an extension ρ with irreducible
/// restriction to the braid group.
pub fn identify_extension<F: Field>(rep: &Representation<F>) -> Result<Classification<F>> {
    let (n, d) = (rep.n, rep.dim);
    if n < 3 {
        return Err(Error::BadStrandCount { n, min: 3 });
    }
    if !rep.is_welded() {
        return Err(Error::MissingAlphaImages);
    }
    let burau = if d + 1 == n {
        true
    } else if d == n {
        false
    } else {
        return Err(not_ext(format!("dimension {d} is neither n-1 nor n")));
    };
    let oor = Error::OutOfClassifiedRange { n, dim: d };
    if burau && matches!(n, 3 | 4 | 6) {
        return Err(oor);
    }
    let (y, z) = recover_yz(&rep.sigma[0], burau)?;
    let y_one = close(&y, &F::one());
    let theorem = match (burau, y_one) {
        (true, true) => Theorem::T3_25,
        (true, false) if n >= 7 => Theorem::T6_2,
        (false, true) if n == 3 => Theorem::T5_9,
        (false, true) => Theorem::T4_11,
        (false, false) if n == 7 || n >= 9 => Theorem::T6_3,
        _ => return Err(oor),
    };
    if burau && poly_p_value(n, &z).negligible(1.0) {
        return Err(not_ext("P_n(z) = 0, restriction is reducible"));
    }
    if !burau && close(&z, &F::one()) {
        return Err(not_ext("z = 1, restriction is reducible"));
    }

    let yinv = y.inv();
    let src: Vec<Matrix<F>> = rep.sigma.iter().map(|g| g.scale(&yinv)).collect();
    let canon = if burau { burau_w(n, &z)? } else { tau(n, &z)? };
    let p = spin_intertwiner(&src, &canon.sigma)?;
    let pinv = p.inverse()?;
    let a = p.dot(&rep.alpha[0]).dot(&pinv);
    let kk = a.trace().div(&F::from_i64(d as i64 - 2));
    let k = if close(&kk, &F::one()) {
        1
    } else if close(&kk, &F::from_i64(-1)) {
        -1
    } else {
        return Err(not_ext(format!("trace of alpha_1 gives k = {kk}")));
    };
    let ah = a.scale(&F::from_i64(k));

    let (family, certificate, lambda, x) = if burau {
        let id = Matrix::identity(d);
        let c1 = canon.sigma[0].minus(&id);
        let d1 = ah.minus(&id);
        let same_image = Matrix::hstack(&[&c1, &d1])?.rank() == 1;
        if same_image || close(&z, &F::one()) {
            let q = q_change_of_basis(n, &z)?;
            (Family::TildeBeta, q.inverse()?.dot(&p), None, None)
        } else {
            (Family::HatBeta, p, None, None)
        }
    } else {
        let e3_fixed = n != 3 || {
            let col = ah.column(2);
            col[0].negligible(1.0) && col[1].negligible(1.0) && close(&col[2], &F::one())
        };
        if e3_fixed {
            (Family::TildeTau, p, Some(ah.get(1, 0).clone()), None)
        } else {
            let (a, b, c, x) = psi3_point(&ah, &z)?;
            let lambda = psi3_lambda_from_point(&a, &b, &c)
                .map_err(|e| Error::NotRepresentable(format!("psi3 parameters: {e}")))?;
            (Family::Psi3, p, Some(lambda), Some(x))
        }
    };
    let result = Classification {
        theorem,
        n,
        family,
        y,
        k,
        z,
        lambda,
        x,
        certificate,
    };
    let target = result
        .canonical()
        .map_err(|e| not_ext(format!("recovered parameters are invalid: {e}")))?;
    if !intertwines(&result.certificate, &rep.images(crate::Restrict::All), &target.images(crate::Restrict::All)) {
        return Err(not_ext("alpha images match no family"));
    }
    Ok(result)
}
