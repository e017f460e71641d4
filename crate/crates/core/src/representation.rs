use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{CycRat, Laurent, Scalar, C64};
use crate::word::{GenKind, Generator};

/// Family name and parameter assignment a representation was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct FamilyLabel {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl FamilyLabel {
    pub fn new(family: &str) -> Self {
        FamilyLabel {
            family: family.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// Which generator images an algorithm looks at.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Restrict {
    All,
    SigmaOnly,
    AlphaOnly,
}

/// Images ρ(σ_i), ρ(α_i) for i = 1…n−1; `alpha` is empty for braid-group
/// representations.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<R> {
    pub n: usize,
    pub dim: usize,
    pub sigma: Vec<Matrix<R>>,
    pub alpha: Vec<Matrix<R>>,
    pub label: Option<FamilyLabel>,
}

impl<R: Scalar> Representation<R> {
    /// Checks shapes; in exact rings also checks that each α image squares to I.
    pub fn new(
        n: usize,
        sigma: Vec<Matrix<R>>,
        alpha: Vec<Matrix<R>>,
        label: Option<FamilyLabel>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadStrandCount { n, min: 2 });
        }
        if sigma.len() != n - 1 || !(alpha.is_empty() || alpha.len() == n - 1) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} sigma and 0 or {} alpha images, got {} and {}",
                n - 1,
                n - 1,
                sigma.len(),
                alpha.len()
            )));
        }
        let dim = sigma[0].rows();
        if sigma.iter().chain(&alpha).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::ShapeMismatch(format!("all images must be {dim}x{dim}")));
        }
        if R::EXACT {
            for (i, a) in alpha.iter().enumerate() {
                if !a.dot(a).is_identity() {
                    return Err(Error::NotInvolution(i + 1));
                }
            }
        }
        Ok(Representation {
            n,
            dim,
            sigma,
            alpha,
            label,
        })
    }

    pub fn is_welded(&self) -> bool {
        !self.alpha.is_empty()
    }

    pub fn image(&self, g: Generator) -> Result<&Matrix<R>> {
        if g.index == 0 || g.index >= self.n {
            return Err(Error::IndexOutOfRange {
                index: g.index,
                n: self.n,
            });
        }
        match g.kind {
            GenKind::Sigma => Ok(&self.sigma[g.index - 1]),
            GenKind::Alpha => self.alpha.get(g.index - 1).ok_or(Error::MissingAlphaImages),
        }
    }

    /// The generator images selected by `sel`, σ's first.
    pub fn images(&self, sel: Restrict) -> Vec<&Matrix<R>> {
        match sel {
            Restrict::All => self.sigma.iter().chain(&self.alpha).collect(),
            Restrict::SigmaOnly => self.sigma.iter().collect(),
            Restrict::AlphaOnly => self.alpha.iter().collect(),
        }
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Representation<S> {
        Representation {
            n: self.n,
            dim: self.dim,
            sigma: self.sigma.iter().map(|m| m.map(&f)).collect(),
            alpha: self.alpha.iter().map(|m| m.map(&f)).collect(),
            label: self.label.clone(),
        }
    }

    pub fn try_map<S: Scalar>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Representation<S>> {
        Ok(Representation {
            n: self.n,
            dim: self.dim,
            sigma: self.sigma.iter().map(|m| m.try_map(&f)).collect::<Result<_>>()?,
            alpha: self.alpha.iter().map(|m| m.try_map(&f)).collect::<Result<_>>()?,
            label: self.label.clone(),
        })
    }

    /// `g ↦ P ρ(g) P⁻¹`.
    pub fn conjugate(&self, p: &Matrix<R>) -> Result<Self> {
        let pinv = p.inverse()?;
        let c = |m: &Matrix<R>| p.dot(m).dot(&pinv);
        Ok(Representation {
            n: self.n,
            dim: self.dim,
            sigma: self.sigma.iter().map(c).collect(),
            alpha: self.alpha.iter().map(c).collect(),
            label: self.label.clone(),
        })
    }

    /// Same images without α's.
    pub fn braid_restriction(&self) -> Self {
        Representation {
            alpha: Vec::new(),
            ..self.clone()
        }
    }
}

impl Representation<Laurent> {
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .sigma
            .iter()
            .chain(&self.alpha)
            .flat_map(|m| m.variables())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_cyc(&self) -> Result<Representation<CycRat>> {
        self.try_map(|x| x.as_constant().ok_or(Error::SymbolicInput))
    }

    pub fn specialize<S: Scalar>(&self, assign: &BTreeMap<String, S>) -> Result<Representation<S>> {
        self.try_map(|x| x.specialize(assign))
    }
}

impl Representation<CycRat> {
    pub fn to_laurent(&self) -> Representation<Laurent> {
        self.map(|c| Laurent::constant(c.clone()))
    }

    pub fn to_numeric(&self) -> Representation<C64> {
        use crate::scalar::Field;
        self.map(|c| C64(c.to_c64()))
    }
}

/// A representation as read from or written to JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRep {
    Exact(Representation<Laurent>),
    Numeric(Representation<C64>),
}

impl AnyRep {
    pub fn n(&self) -> usize {
        match self {
            AnyRep::Exact(r) => r.n,
            AnyRep::Numeric(r) => r.n,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyRep::Exact(r) => r.dim,
            AnyRep::Numeric(r) => r.dim,
        }
    }

    pub fn label(&self) -> Option<&FamilyLabel> {
        match self {
            AnyRep::Exact(r) => r.label.as_ref(),
            AnyRep::Numeric(r) => r.label.as_ref(),
        }
    }

    pub fn ring_name(&self) -> &'static str {
        match self {
            AnyRep::Exact(_) => "laurent",
            AnyRep::Numeric(_) => "complex",
        }
    }

    /// Evaluated view: exact constants become ℚ(ω) matrices.
    pub fn evaluated(&self) -> Result<EvalRep> {
        match self {
            AnyRep::Exact(r) => Ok(EvalRep::Exact(r.to_cyc()?)),
            AnyRep::Numeric(r) => Ok(EvalRep::Numeric(r.clone())),
        }
    }

    pub fn to_numeric(&self) -> Result<Representation<C64>> {
        match self.evaluated()? {
            EvalRep::Exact(r) => Ok(r.to_numeric()),
            EvalRep::Numeric(r) => Ok(r),
        }
    }
}

/// A representation over a field.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalRep {
    Exact(Representation<CycRat>),
    Numeric(Representation<C64>),
}
