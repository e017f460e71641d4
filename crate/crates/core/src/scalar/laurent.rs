use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::quad::CycRat;
use super::Scalar;
use crate::error::{Error, Result};

type Terms = BTreeMap<Vec<i32>, CycRat>;

/// Multivariate Laurent polynomial over ℚ(ω) in canonical form: sorted
/// variable list restricted to variables that occur, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    vars: Vec<String>,
    terms: Terms,
}

fn add_exp(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("Laurent exponent overflow"))
        .collect()
}

fn sub_exp(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y).expect("Laurent exponent overflow"))
        .collect()
}

impl Laurent {
    pub fn constant(c: CycRat) -> Self {
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Laurent {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(name, 1, CycRat::one())
    }

    /// `c · name^e`.
    pub fn monomial(name: &str, e: i32, c: CycRat) -> Self {
        Self::from_terms(vec![name.to_string()], [(vec![e], c)].into_iter().collect())
    }

    /// Builds a canonical value from raw parts; `vars` need not be sorted.
    pub fn from_terms(vars: Vec<String>, terms: Terms) -> Self {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let sorted: Vec<String> = order.iter().map(|&i| vars[i].clone()).collect();
        for w in sorted.windows(2) {
            assert!(w[0] != w[1], "duplicate variable `{}`", w[0]);
        }
        let mut out = Terms::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            if c.is_zero() {
                continue;
            }
            let key: Vec<i32> = order.iter().map(|&i| e[i]).collect();
            let slot = out.entry(key).or_insert_with(CycRat::zero);
            *slot = slot.clone() + c;
        }
        out.retain(|_, c| !c.is_zero());
        Self::prune(sorted, out)
    }

    fn prune(vars: Vec<String>, terms: Terms) -> Self {
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return Laurent { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        let vars = keep.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c))
            .collect();
        Laurent { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, CycRat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as an element of ℚ(ω) when no variable occurs.
    pub fn as_constant(&self) -> Option<CycRat> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(CycRat::zero))
    }

    /// Terms re-indexed against the sorted superset `target`.
    fn lifted(&self, target: &[String]) -> Terms {
        if self.vars == target {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut k = vec![0; target.len()];
                for (i, &p) in pos.iter().enumerate() {
                    k[p] = e[i];
                }
                (k, c.clone())
            })
            .collect()
    }

    fn joint_vars(a: &Laurent, b: &Laurent) -> Vec<String> {
        if a.vars == b.vars {
            return a.vars.clone();
        }
        let s: BTreeSet<&String> = a.vars.iter().chain(b.vars.iter()).collect();
        s.into_iter().cloned().collect()
    }

    fn combine(self, o: Laurent, sign: bool) -> Laurent {
        let vars = Self::joint_vars(&self, &o);
        let mut t = if self.vars == vars {
            self.terms
        } else {
            self.lifted(&vars)
        };
        let ot = if o.vars == vars { o.terms } else { o.lifted(&vars) };
        for (e, c) in ot {
            let c = if sign { c } else { -c };
            match t.get_mut(&e) {
                Some(slot) => {
                    *slot = slot.clone() + c;
                    if slot.is_zero() {
                        t.remove(&e);
                    }
                }
                None => {
                    t.insert(e, c);
                }
            }
        }
        Self::prune(vars, t)
    }

    fn product(&self, o: &Laurent) -> Laurent {
        if self.terms.is_empty() || o.terms.is_empty() {
            return Laurent::default();
        }
        let vars = Self::joint_vars(self, o);
        let a = self.lifted(&vars);
        let b = o.lifted(&vars);
        let mut t = Terms::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e = add_exp(ea, eb);
                let c = ca * cb;
                match t.get_mut(&e) {
                    Some(slot) => *slot = slot.clone() + c,
                    None => {
                        t.insert(e, c);
                    }
                }
            }
        }
        t.retain(|_, c| !c.is_zero());
        Self::prune(vars, t)
    }

    /// Per-variable (min, max) exponents.
    fn exponent_box(terms: &Terms, k: usize) -> Vec<(i32, i32)> {
        (0..k)
            .map(|i| {
                let it = terms.keys().map(|e| e[i]);
                (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
            })
            .collect()
    }

    /// Exact quotient by lex-leading-term division; `None` if `d` does not divide.
    fn divide(&self, d: &Laurent) -> Option<Laurent> {
        if d.terms.is_empty() {
            return None;
        }
        if self.terms.is_empty() {
            return Some(Laurent::default());
        }
        let vars = Self::joint_vars(self, d);
        let k = vars.len();
        let mut rem = self.lifted(&vars);
        let dt = d.lifted(&vars);
        let (dl, dc) = dt.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let dc_inv = dc.try_inv()?;
        let abox = Self::exponent_box(&rem, k);
        let dbox = Self::exponent_box(&dt, k);
        let qbox: Vec<(i32, i32)> = (0..k)
            .map(|i| (abox[i].0 - dbox[i].0, abox[i].1 - dbox[i].1))
            .collect();
        let mut q = Terms::new();
        while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = sub_exp(&e, &dl);
            if qe.iter().zip(&qbox).any(|(x, (lo, hi))| x < lo || x > hi) {
                return None;
            }
            let qc = &c * &dc_inv;
            for (de, dcoef) in &dt {
                let key = add_exp(de, &qe);
                let sub = dcoef * &qc;
                match rem.get_mut(&key) {
                    Some(slot) => {
                        *slot = slot.clone() - sub;
                        if slot.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -sub);
                    }
                }
            }
            q.insert(qe, qc);
        }
        Some(Self::prune(vars, q))
    }

    /// Evaluates at `assign`, which must cover every variable.
    pub fn specialize<R: Scalar>(&self, assign: &BTreeMap<String, R>) -> Result<R> {
        self.eval_with(|name| assign.get(name).cloned())
    }

    /// Substitutes the assigned variables, keeping the others symbolic.
    pub fn specialize_partial(&self, assign: &BTreeMap<String, Laurent>) -> Result<Laurent> {
        self.eval_with(|name| Some(assign.get(name).cloned().unwrap_or_else(|| Laurent::var(name))))
    }

    fn eval_with<R: Scalar>(&self, lookup: impl Fn(&str) -> Option<R>) -> Result<R> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            vals.push(lookup(v).ok_or_else(|| Error::UnassignedVariable(v.clone()))?);
        }
        let mut cache: Vec<BTreeMap<i32, R>> = vec![BTreeMap::new(); vals.len()];
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut term = R::from_cyc(c).ok_or_else(|| Error::NotRepresentable(c.to_string()))?;
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let p = match cache[i].get(&ei) {
                    Some(p) => p.clone(),
                    None => {
                        let p = vals[i].pow_i(ei as i64).map_err(|_| {
                            Error::ZeroAssignedToInvertedVariable(self.vars[i].clone())
                        })?;
                        cache[i].insert(ei, p.clone());
                        p
                    }
                };
                term = term * p;
            }
            acc = acc + term;
        }
        Ok(acc)
    }
}

/// `1 + v + … + v^{n−1}`.
pub fn poly_p(n: i64, var: &str) -> Result<Laurent> {
    if n < 2 {
        return Err(Error::BadDegree(n));
    }
    let terms = (0..n as i32).map(|e| (vec![e], CycRat::one())).collect();
    Ok(Laurent::from_terms(vec![var.to_string()], terms))
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        self.combine(o, true)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        self.combine(o, false)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        self.product(&o)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Scalar for Laurent {
    const EXACT: bool = true;

    fn zero() -> Self {
        Laurent::default()
    }
    fn one() -> Self {
        Laurent::constant(CycRat::one())
    }
    fn from_i64(v: i64) -> Self {
        Laurent::constant(CycRat::from_i64(v))
    }
    fn from_cyc(c: &CycRat) -> Option<Self> {
        Some(Laurent::constant(c.clone()))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        self.vars.is_empty() && self.terms.len() == 1 && self.terms.values().all(|c| c.is_one())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let e: Vec<i32> = e
            .iter()
            .map(|x| x.checked_neg().expect("Laurent exponent overflow"))
            .collect();
        Some(Laurent {
            vars: self.vars.clone(),
            terms: [(e, c.try_inv()?)].into_iter().collect(),
        })
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        match d.try_inv() {
            Some(inv) => Some(self.product(&inv)),
            None => self.divide(d),
        }
    }
    fn magnitude(&self) -> f64 {
        use super::Field;
        self.terms
            .values()
            .map(|c| c.to_c64().norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x != 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let cs = c.to_string();
            let compound = !c.is_rational();
            let neg = !compound && cs.starts_with('-');
            let body = if mono.is_empty() {
                if compound {
                    format!("({cs})")
                } else {
                    cs.trim_start_matches('-').to_string()
                }
            } else {
                let m = mono.join("*");
                if compound {
                    format!("({cs})*{m}")
                } else {
                    let mag = cs.trim_start_matches('-');
                    if mag == "1" {
                        m
                    } else {
                        format!("{mag}*{m}")
                    }
                }
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C64;

    fn t() -> Laurent {
        Laurent::var("t")
    }

    #[test]
    fn cancellation_is_canonical() {
        let a = t() + t() * t();
        let b = t() * t();
        assert_eq!(a - b, t());
        let z = t() - t();
        assert!(z.is_zero());
        assert!(z.vars().is_empty());
    }

    #[test]
    fn monomial_unit_division() {
        let inv = t().try_inv().unwrap();
        assert_eq!(inv * t() * t(), t());
        assert!((t() + Laurent::one()).try_inv().is_none());
    }

    #[test]
    fn specialize_examples() {
        let p3 = poly_p(3, "t").unwrap();
        let v: CycRat = p3.specialize(&[("t".to_string(), CycRat::from_i64(2))].into()).unwrap();
        assert_eq!(v, CycRat::from_i64(7));
        let w: CycRat = p3.specialize(&[("t".to_string(), CycRat::omega())].into()).unwrap();
        assert!(w.is_zero());
        let tq = t() * Laurent::var("q").try_inv().unwrap();
        let a = [("t".to_string(), CycRat::from_i64(3)), ("q".to_string(), CycRat::from_i64(3))];
        assert!(tq.specialize(&a.into()).unwrap().is_one());
        let p4 = poly_p(4, "t").unwrap();
        let z: C64 = p4.specialize(&[("t".to_string(), C64::new(0.0, 1.0))].into()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn specialize_errors() {
        let inv = t().try_inv().unwrap();
        let e = inv.specialize(&[("t".to_string(), CycRat::zero())].into());
        assert_eq!(e, Err(Error::ZeroAssignedToInvertedVariable("t".into())));
        let e = t().specialize::<CycRat>(&BTreeMap::new());
        assert_eq!(e, Err(Error::UnassignedVariable("t".into())));
        assert_eq!(poly_p(1, "t"), Err(Error::BadDegree(1)));
    }

    #[test]
    fn exact_division_multivariate() {
        let q = Laurent::var("q");
        let a = t() + q.clone() + Laurent::one();
        let b = t() * t().try_inv().unwrap() - q.clone() * t();
        let prod = a.clone() * b.clone();
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(prod.exact_div(&a), Some(b));
        assert_eq!((t() + Laurent::one()).exact_div(&(t() - Laurent::one())), None);
    }

    #[test]
    fn display_forms() {
        let p = poly_p(3, "t").unwrap();
        assert_eq!(p.to_string(), "t^2 + t + 1");
        let x = Laurent::monomial("t", -1, CycRat::from_ints(0, -2));
        assert_eq!(x.to_string(), "(-2w)*t^-1");
    }
}
