//! Constructors for every representation family, in their native bases,
//! plus θ images and the W/V change of basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representation::{AnyRep, FamilyLabel, Representation};
use crate::scalar::{tolerance, CycRat, Laurent, ParamValue, Scalar, C64};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// σ_i ↦ t, braid group only.
    Chi,
    /// σ_i ↦ y, α_i ↦ k.
    X,
    /// Reduced Burau in basis W.
    BurauW,
    /// Reduced Burau in basis V.
    BurauV,
    /// Standard representation.
    Tau,
    TildeBeta,
    HatBeta,
    TildeTau,
    Psi3,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Chi,
        Family::X,
        Family::BurauW,
        Family::BurauV,
        Family::Tau,
        Family::TildeBeta,
        Family::HatBeta,
        Family::TildeTau,
        Family::Psi3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Chi => "chi",
            Family::X => "X",
            Family::BurauW => "burau-W",
            Family::BurauV => "burau-V",
            Family::Tau => "tau",
            Family::TildeBeta => "tilde-beta",
            Family::HatBeta => "hat-beta",
            Family::TildeTau => "tilde-tau",
            Family::Psi3 => "psi3",
        }
    }

    pub fn is_welded(self) -> bool {
        !matches!(self, Family::Chi | Family::BurauW | Family::BurauV | Family::Tau)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| Error::BadParams(format!("unknown family `{s}`")))
    }
}

fn need_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::BadStrandCount { n, min })
    } else {
        Ok(())
    }
}

fn unit<R: Scalar>(v: &R, what: &str) -> Result<R> {
    v.try_inv()
        .ok_or_else(|| Error::BadParams(format!("{what} = {v} is not invertible")))
}

fn third<R: Scalar>() -> R {
    R::from_cyc(&CycRat::from_fracs(1, 3, 0, 1)).expect("1/3 in every ring")
}

/// Identity of size `dim` with `block` written at `(start, start)`.
fn with_block<R: Scalar>(dim: usize, start: usize, block: Vec<Vec<R>>) -> Matrix<R> {
    let mut m = Matrix::identity(dim);
    m.place(start, start, &block);
    m
}

fn label<R: Scalar>(fam: Family, n: usize, params: &[(&str, &R)]) -> FamilyLabel {
    params
        .iter()
        .fold(FamilyLabel::new(fam.name()).with("n", n), |l, (k, v)| l.with(k, v))
}

/// Burau blocks in basis W for σ_i.
fn burau_w_matrix<R: Scalar>(n: usize, i: usize, t: &R) -> Matrix<R> {
    let (z, o) = (R::zero(), R::one());
    let d = n - 1;
    if i == 1 {
        with_block(d, 0, vec![vec![-t.clone(), z.clone()], vec![o.clone(), o]])
    } else if i == n - 1 {
        with_block(d, d - 2, vec![vec![o, t.clone()], vec![z, -t.clone()]])
    } else {
        with_block(
            d,
            i - 2,
            vec![
                vec![o.clone(), t.clone(), z.clone()],
                vec![z.clone(), -t.clone(), z.clone()],
                vec![z, o.clone(), o],
            ],
        )
    }
}

/// Burau blocks in basis V for σ_i.
fn burau_v_matrix<R: Scalar>(n: usize, i: usize, t: &R) -> Matrix<R> {
    let (z, o) = (R::zero(), R::one());
    let d = n - 1;
    if i == 1 {
        with_block(d, 0, vec![vec![-t.clone(), o.clone()], vec![z, o]])
    } else if i == n - 1 {
        with_block(d, d - 2, vec![vec![o, z], vec![t.clone(), -t.clone()]])
    } else {
        with_block(
            d,
            i - 2,
            vec![
                vec![o.clone(), z.clone(), z.clone()],
                vec![t.clone(), -t.clone(), o.clone()],
                vec![z.clone(), z, o],
            ],
        )
    }
}

fn hat_beta_alpha<R: Scalar>(n: usize, i: usize, t: &R, tinv: &R) -> Matrix<R> {
    let (z, o) = (R::zero(), R::one());
    let d = n - 1;
    if i == 1 {
        with_block(d, 0, vec![vec![-o.clone(), z], vec![tinv.clone(), o]])
    } else if i == n - 1 {
        with_block(d, d - 2, vec![vec![o.clone(), t.clone()], vec![z, -o]])
    } else {
        with_block(
            d,
            i - 2,
            vec![
                vec![o.clone(), t.clone(), z.clone()],
                vec![z.clone(), -o.clone(), z.clone()],
                vec![z, tinv.clone(), o],
            ],
        )
    }
}

fn swap_block<R: Scalar>(n: usize, i: usize, upper: &R, lower: &R) -> Matrix<R> {
    with_block(
        n,
        i - 1,
        vec![vec![R::zero(), upper.clone()], vec![lower.clone(), R::zero()]],
    )
}

/// χ_n(t): σ_i ↦ t.
pub fn chi<R: Scalar>(n: usize, t: &R) -> Result<Representation<R>> {
    need_n(n, 2)?;
    let sigma = (1..n).map(|_| Matrix::scalar(1, t.clone())).collect();
    Representation::new(n, sigma, vec![], Some(label(Family::Chi, n, &[("t", t)])))
}

/// X_n(y, k): σ_i ↦ y, α_i ↦ k with k = ±1.
pub fn character<R: Scalar>(n: usize, y: &R, k: i64) -> Result<Representation<R>> {
    need_n(n, 2)?;
    check_k(k)?;
    unit(y, "y")?;
    let sigma = (1..n).map(|_| Matrix::scalar(1, y.clone())).collect();
    let alpha = (1..n).map(|_| Matrix::scalar(1, R::from_i64(k))).collect();
    let l = label(Family::X, n, &[("y", y)]).with("k", k);
    Representation::new(n, sigma, alpha, Some(l))
}

fn check_k(k: i64) -> Result<()> {
    if k == 1 || k == -1 {
        Ok(())
    } else {
        Err(Error::BadParams(format!("k must be 1 or -1, got {k}")))
    }
}

pub fn burau_w<R: Scalar>(n: usize, t: &R) -> Result<Representation<R>> {
    need_n(n, 3)?;
    let sigma = (1..n).map(|i| burau_w_matrix(n, i, t)).collect();
    Representation::new(n, sigma, vec![], Some(label(Family::BurauW, n, &[("t", t)])))
}

pub fn burau_v<R: Scalar>(n: usize, t: &R) -> Result<Representation<R>> {
    need_n(n, 3)?;
    let sigma = (1..n).map(|i| burau_v_matrix(n, i, t)).collect();
    Representation::new(n, sigma, vec![], Some(label(Family::BurauV, n, &[("t", t)])))
}

/// τ_n(t): block [[0, t], [1, 0]] on coordinates i−1, i (0-based).
pub fn tau<R: Scalar>(n: usize, t: &R) -> Result<Representation<R>> {
    need_n(n, 2)?;
    let sigma = (1..n).map(|i| swap_block(n, i, t, &R::one())).collect();
    Representation::new(n, sigma, vec![], Some(label(Family::Tau, n, &[("t", t)])))
}

/// β̃_n(t): basis-V Burau with α_i ↦ the basis-V σ_i image at t = 1.
pub fn tilde_beta<R: Scalar>(n: usize, t: &R) -> Result<Representation<R>> {
    need_n(n, 3)?;
    let sigma = (1..n).map(|i| burau_v_matrix(n, i, t)).collect();
    let alpha = (1..n).map(|i| burau_v_matrix(n, i, &R::one())).collect();
    Representation::new(n, sigma, alpha, Some(label(Family::TildeBeta, n, &[("t", t)])))
}

/// β̂_n(t): basis-W Burau with its own α images; needs t invertible.
pub fn hat_beta<R: Scalar>(n: usize, t: &R) -> Result<Representation<R>> {
    need_n(n, 3)?;
    let tinv = unit(t, "t")?;
    let sigma = (1..n).map(|i| burau_w_matrix(n, i, t)).collect();
    let alpha = (1..n).map(|i| hat_beta_alpha(n, i, t, &tinv)).collect();
    Representation::new(n, sigma, alpha, Some(label(Family::HatBeta, n, &[("t", t)])))
}

/// τ̃_n(t, q): τ_n(t) with α_i ↦ block [[0, 1/q], [q, 0]].
pub fn tilde_tau<R: Scalar>(n: usize, t: &R, q: &R) -> Result<Representation<R>> {
    need_n(n, 2)?;
    let qinv = unit(q, "q")?;
    let sigma = (1..n).map(|i| swap_block(n, i, t, &R::one())).collect();
    let alpha = (1..n).map(|i| swap_block(n, i, &qinv, q)).collect();
    let l = label(Family::TildeTau, n, &[("t", t), ("q", q)]);
    Representation::new(n, sigma, alpha, Some(l))
}

/// (a, b, c) on the curve a+b+c = 1, a²+b²+c² = 1 for the unit λ.
pub fn psi3_curve_point<R: Scalar>(lambda: &R) -> Result<(R, R, R)> {
    let w = R::omega().ok_or_else(|| Error::BadParams("ring lacks a cube root of unity".into()))?;
    let linv = unit(lambda, "lambda")?;
    let w2 = w.clone() * w.clone();
    let th = third::<R>();
    let a = (w.clone() * lambda.clone() + R::one() + w2.clone() * linv.clone()) * th.clone();
    let b = (lambda.clone() + R::one() + linv.clone()) * th.clone();
    let c = (w2 * lambda.clone() + R::one() + w * linv) * th;
    Ok((a, b, c))
}

/// λ from a point (a, b, c) of the curve: λ = (3b − 1 + 3(a − c)/(1 + 2ω)) / 2.
pub fn psi3_lambda_from_point<R: Scalar>(a: &R, b: &R, c: &R) -> Result<R> {
    let w = R::omega().ok_or_else(|| Error::BadParams("ring lacks a cube root of unity".into()))?;
    let d = unit(&(R::one() + w.clone() + w), "1+2w")?;
    let three = R::from_i64(3);
    let half = R::from_cyc(&CycRat::from_fracs(1, 2, 0, 1)).expect("1/2");
    Ok((three.clone() * b.clone() - R::one() + three * (a.clone() - c.clone()) * d) * half)
}

/// The cube root `x` of 1/z² with index `j`: principal root times ω^j.
pub fn psi3_x_root(z: C64, j: u32) -> C64 {
    let base = (Complex64::new(1.0, 0.0) / (z.0 * z.0)).powf(1.0 / 3.0);
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    C64(base * w.powu(j % 3))
}

/// ψ₃(z, λ; x) with x³ = 1/z².
pub fn psi3<R: Scalar>(z: &R, lambda: &R, x: &R) -> Result<Representation<R>> {
    let xinv = unit(x, "x")?;
    let zinv = unit(z, "z")?;
    let side = x.clone() * x.clone() * x.clone() * z.clone() * z.clone() - R::one();
    let ok = if R::EXACT {
        side.is_zero()
    } else {
        side.magnitude() <= tolerance() * 1e3
    };
    if !ok {
        return Err(Error::BadParams(format!("x^3 z^2 != 1 (x = {x}, z = {z})")));
    }
    let _ = zinv;
    let (a, b, c) = psi3_curve_point(lambda)?;
    let (zero, one) = (R::zero(), R::one());
    let x2 = x.clone() * x.clone();
    let xinv2 = xinv.clone() * xinv.clone();
    let s1 = Matrix::from_rows(vec![
        vec![zero.clone(), z.clone(), zero.clone()],
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
    ])?;
    let s2 = Matrix::from_rows(vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), z.clone()],
        vec![zero.clone(), one, zero],
    ])?;
    let a1 = Matrix::from_rows(vec![
        vec![a.clone(), b.clone() * xinv.clone(), c.clone() * xinv2.clone()],
        vec![x.clone() * b.clone(), c.clone(), a.clone() * xinv.clone()],
        vec![x2.clone() * c.clone(), x.clone() * a.clone(), b.clone()],
    ])?;
    let a2 = Matrix::from_rows(vec![
        vec![b.clone(), c.clone() * xinv.clone(), a.clone() * xinv2],
        vec![x.clone() * c.clone(), a.clone(), b.clone() * xinv],
        vec![x2 * a, x.clone() * b, c],
    ])?;
    let l = label(Family::Psi3, 3, &[("z", z), ("lambda", lambda), ("x", x)]);
    let rep = Representation::new(3, vec![s1, s2], vec![a1, a2], Some(l))?;
    Ok(rep)
}

/// Tridiagonal Q(z) with Q·(β(σ_i))_V = (β(σ_i))_W·Q. Row r (0-based) has
/// diagonal −z^{n−2−r}(z+1), superdiagonal z^{n−2−r}, subdiagonal z^{n−1−r}.
pub fn q_change_of_basis<R: Scalar>(n: usize, z: &R) -> Result<Matrix<R>> {
    need_n(n, 3)?;
    let d = n - 1;
    let zp = |e: usize| z.pow_i(e as i64).expect("nonnegative power");
    let mut q = Matrix::zeros(d, d);
    for r in 0..d {
        let e = n - 2 - r;
        q.set(r, r, -(zp(e) * (z.clone() + R::one())));
        if r + 1 < d {
            q.set(r, r + 1, zp(e));
        }
        if r > 0 {
            q.set(r, r - 1, zp(e + 1));
        }
    }
    Ok(q)
}

/// T = ρ(σ₁σ₂…σ_{n−1}) and its inverse.
pub fn theta_matrix<R: Scalar>(rep: &Representation<R>) -> Result<(Matrix<R>, Matrix<R>)> {
    let t = rep
        .sigma
        .iter()
        .fold(Matrix::identity(rep.dim), |acc, m| acc.dot(m));
    let tinv = t.inverse()?;
    Ok((t, tinv))
}

/// X_n(y, k) ⊗ ρ: σ images scaled by y, α images by k.
pub fn tensor_with_character<R: Scalar>(
    rep: &Representation<R>,
    y: &R,
    k: i64,
) -> Result<Representation<R>> {
    check_k(k)?;
    unit(y, "y")?;
    let kk = R::from_i64(k);
    let mut out = Representation {
        n: rep.n,
        dim: rep.dim,
        sigma: rep.sigma.iter().map(|m| m.scale(y)).collect(),
        alpha: rep.alpha.iter().map(|m| m.scale(&kk)).collect(),
        label: rep.label.clone(),
    };
    if let Some(l) = out.label.take() {
        out.label = Some(l.with("y", y).with("k", k));
    }
    Ok(out)
}

/// Family, strand count and parameter values as given by a user.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub family: Family,
    pub n: usize,
    pub values: BTreeMap<String, ParamValue>,
    /// Index of the cube root of 1/z² used for ψ₃ when `x` is not given.
    pub x_root: Option<u32>,
}

const ALIASES: &[(&str, &[&str])] = &[
    ("t", &["t", "z"]),
    ("q", &["q", "lambda"]),
    ("y", &["y"]),
    ("k", &["k"]),
    ("z", &["z", "t"]),
    ("lambda", &["lambda", "q"]),
    ("x", &["x"]),
];

impl FamilyParams {
    pub fn new(family: Family, n: usize) -> Self {
        FamilyParams {
            family,
            n,
            values: BTreeMap::new(),
            x_root: None,
        }
    }

    pub fn with(mut self, key: &str, v: ParamValue) -> Self {
        self.values.insert(key.to_string(), v);
        self
    }

    pub(crate) fn lookup(&self, key: &str) -> Option<&ParamValue> {
        let names = ALIASES
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .unwrap_or(&[]);
        names.iter().find_map(|k| self.values.get(*k))
    }

    fn k(&self) -> Result<Option<i64>> {
        match self.lookup("k") {
            None => Ok(None),
            Some(ParamValue::Exact(c)) if *c == CycRat::one() => Ok(Some(1)),
            Some(ParamValue::Exact(c)) if *c == CycRat::from_i64(-1) => Ok(Some(-1)),
            Some(ParamValue::Complex(z)) if (z.0 - 1.0).norm() <= tolerance() => Ok(Some(1)),
            Some(ParamValue::Complex(z)) if (z.0 + 1.0).norm() <= tolerance() => Ok(Some(-1)),
            Some(v) => Err(Error::BadParams(format!("k must be 1 or -1, got {v}"))),
        }
    }

    fn numeric(&self) -> bool {
        let any_complex = self
            .values
            .values()
            .any(|v| matches!(v, ParamValue::Complex(_)));
        any_complex || (self.family == Family::Psi3 && self.lookup("x").is_none())
    }
}

fn build<R: Scalar>(
    p: &FamilyParams,
    get: &dyn Fn(&str) -> Result<Option<R>>,
) -> Result<Representation<R>> {
    let req = |key: &str| -> Result<R> {
        get(key)?.ok_or_else(|| Error::BadParams(format!("{} needs `{key}`", p.family)))
    };
    let n = p.n;
    let k = p.k()?;
    let rep = match p.family {
        Family::Chi => chi(n, &req("t")?)?,
        Family::X => {
            return character(n, &req("y")?, k.unwrap_or(1));
        }
        Family::BurauW => burau_w(n, &req("t")?)?,
        Family::BurauV => burau_v(n, &req("t")?)?,
        Family::Tau => tau(n, &req("t")?)?,
        Family::TildeBeta => tilde_beta(n, &req("t")?)?,
        Family::HatBeta => hat_beta(n, &req("t")?)?,
        Family::TildeTau => tilde_tau(n, &req("t")?, &req("q")?)?,
        Family::Psi3 => {
            if n != 3 {
                return Err(Error::BadParams(format!("psi3 needs n = 3, got {n}")));
            }
            psi3(&req("z")?, &req("lambda")?, &req("x")?)?
        }
    };
    let y = get("y")?;
    if y.is_none() && k.is_none() {
        return Ok(rep);
    }
    if !p.family.is_welded() && k.is_some() {
        return Err(Error::BadParams(format!("{} has no alpha images for k", p.family)));
    }
    tensor_with_character(&rep, &y.unwrap_or_else(R::one), k.unwrap_or(1))
}

/// Builds the requested family: symbolic and exact values give a Laurent
/// representation, any complex value (or ψ₃ without explicit `x`) a numeric one.
pub fn make_family(p: &FamilyParams) -> Result<AnyRep> {
    if p.numeric() {
        let get = |key: &str| -> Result<Option<C64>> {
            if key == "x" && p.family == Family::Psi3 && p.lookup("x").is_none() {
                let z = p
                    .lookup("z")
                    .and_then(|v| v.to_c64())
                    .ok_or_else(|| Error::BadParams("psi3 needs a numeric z".into()))?;
                return Ok(Some(psi3_x_root(z, p.x_root.unwrap_or(0))));
            }
            match p.lookup(key) {
                None => Ok(None),
                Some(ParamValue::Sym) => Err(Error::BadParams(format!(
                    "`{key}` cannot stay symbolic next to complex values"
                ))),
                Some(v) => Ok(v.to_c64()),
            }
        };
        Ok(AnyRep::Numeric(build(p, &get)?))
    } else {
        let get = |key: &str| -> Result<Option<Laurent>> {
            match p.lookup(key) {
                None => Ok(None),
                Some(ParamValue::Sym) => {
                    if p.family == Family::Psi3 {
                        return Err(Error::BadParams("psi3 cannot be symbolic".into()));
                    }
                    Ok(Some(Laurent::var(key)))
                }
                Some(ParamValue::Exact(c)) => Ok(Some(Laurent::constant(c.clone()))),
                Some(ParamValue::Complex(_)) => unreachable!("numeric branch"),
            }
        };
        Ok(AnyRep::Exact(build(p, &get)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn lt() -> Laurent {
        Laurent::var("t")
    }

    #[test]
    fn tilde_tau_sigma_layout() {
        let q = Laurent::var("q");
        let r = tilde_tau(3, &lt(), &q).unwrap();
        let (z, o) = (Laurent::zero(), Laurent::one());
        let expect = Matrix::from_rows(vec![
            vec![z.clone(), lt(), z.clone()],
            vec![o.clone(), z.clone(), z.clone()],
            vec![z.clone(), z, o],
        ])
        .unwrap();
        assert_eq!(r.sigma[0], expect);
    }

    #[test]
    fn character_alpha_is_k() {
        let x = character(4, &CycRat::from_i64(5), -1).unwrap();
        assert_eq!(x.alpha[1], Matrix::scalar(1, CycRat::from_i64(-1)));
        assert!(character(4, &CycRat::from_i64(5), 2).is_err());
    }

    #[test]
    fn q_matrix_n3() {
        let q = q_change_of_basis(3, &lt()).unwrap();
        let o = Laurent::one();
        let expect = Matrix::from_rows(vec![
            vec![-(lt() * (lt() + o.clone())), lt()],
            vec![lt(), -(lt() + o)],
        ])
        .unwrap();
        assert_eq!(q, expect);
        assert_eq!(
            q.det().unwrap(),
            lt() * crate::scalar::poly_p(3, "t").unwrap()
        );
    }

    #[test]
    fn theta_closed_forms() {
        let two = CycRat::from_i64(2);
        let (t, _) = theta_matrix(&burau_v(3, &two).unwrap()).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![CycRat::zero(), CycRat::from_i64(-2)],
            vec![two.clone(), CycRat::from_i64(-2)],
        ])
        .unwrap();
        assert_eq!(t, expect);
        let (t, _) = theta_matrix(&tau(3, &two).unwrap()).unwrap();
        assert_eq!(t.pow(3), Matrix::scalar(3, CycRat::from_i64(4)));
        let (t, tinv) = theta_matrix(&burau_w(4, &two).unwrap()).unwrap();
        assert_eq!(t.pow(4), Matrix::scalar(3, CycRat::from_i64(16)));
        assert!(t.dot(&tinv).is_identity());
    }

    #[test]
    fn curve_point_examples() {
        let (a, b, c) = psi3_curve_point(&CycRat::one()).unwrap();
        assert_eq!((a, b, c), (CycRat::zero(), CycRat::one(), CycRat::zero()));
        for l in [CycRat::omega(), CycRat::from_i64(2), CycRat::from_fracs(3, 7, -2, 5)] {
            let (a, b, c) = psi3_curve_point(&l).unwrap();
            let s = a.clone() + b.clone() + c.clone();
            let s2 = a.clone() * a.clone() + b.clone() * b.clone() + c.clone() * c.clone();
            assert!(s.is_one() && s2.is_one());
            assert_eq!(psi3_lambda_from_point(&a, &b, &c).unwrap(), l);
        }
        assert!(psi3_curve_point(&CycRat::zero()).is_err());
        assert!(psi3_curve_point(&GaussRat::from_i64(2)).is_err());
    }

    #[test]
    fn psi3_collapses_to_tilde_tau() {
        let z = CycRat::from_i64(-1);
        let x = CycRat::omega();
        let p = psi3(&z, &CycRat::one(), &x).unwrap();
        let t = tilde_tau(3, &z, &x).unwrap();
        assert_eq!(p.sigma, t.sigma);
        assert_eq!(p.alpha, t.alpha);
        assert!(psi3(&CycRat::from_i64(2), &CycRat::one(), &CycRat::one()).is_err());
    }

    #[test]
    fn tensor_scales_alpha() {
        let r = tilde_tau(4, &CycRat::from_i64(2), &CycRat::from_i64(3)).unwrap();
        let s = tensor_with_character(&r, &CycRat::one(), -1).unwrap();
        assert_eq!(*s.alpha[1].get(1, 2), CycRat::from_fracs(-1, 3, 0, 1));
        assert_eq!(*s.alpha[1].get(2, 1), CycRat::from_i64(-3));
        let same = tensor_with_character(&r, &CycRat::one(), 1).unwrap();
        assert_eq!(same.sigma, r.sigma);
        assert_eq!(same.alpha, r.alpha);
    }

    #[test]
    fn make_family_paths() {
        let p = FamilyParams::new(Family::TildeTau, 3)
            .with("t", ParamValue::Sym)
            .with("q", ParamValue::Sym);
        let AnyRep::Exact(r) = make_family(&p).unwrap() else { panic!() };
        assert_eq!(r.dim, 3);
        let p = FamilyParams::new(Family::Psi3, 3)
            .with("z", ParamValue::Complex(C64::new(0.7, 0.2)))
            .with("lambda", ParamValue::Exact(CycRat::from_fracs(23, 10, 0, 1)));
        assert!(matches!(make_family(&p).unwrap(), AnyRep::Numeric(_)));
        let p = FamilyParams::new(Family::X, 4)
            .with("y", ParamValue::Exact(CycRat::from_i64(2)))
            .with("k", ParamValue::Exact(CycRat::from_i64(-1)));
        assert_eq!(make_family(&p).unwrap().dim(), 1);
        let bad = FamilyParams::new(Family::X, 4)
            .with("y", ParamValue::Exact(CycRat::from_i64(2)))
            .with("k", ParamValue::Exact(CycRat::from_i64(3)));
        assert!(matches!(make_family(&bad), Err(Error::BadParams(_))));
        assert_eq!("tilde_beta".parse::<Family>().unwrap(), Family::TildeBeta);
    }
}
