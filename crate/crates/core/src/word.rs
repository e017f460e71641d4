//! Words in the generators σ_i^{±1}, α_i of the welded braid group, the
//! defining relators, and a few derived elements.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Sigma,
    Alpha,
}

/// `σ_index^power` or `α_index` (power always +1 for α).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
    pub power: i8,
}

impl Generator {
    pub fn sigma(index: usize) -> Self {
        Generator {
            kind: GenKind::Sigma,
            index,
            power: 1,
        }
    }
    pub fn sigma_inv(index: usize) -> Self {
        Generator {
            kind: GenKind::Sigma,
            index,
            power: -1,
        }
    }
    pub fn alpha(index: usize) -> Self {
        Generator {
            kind: GenKind::Alpha,
            index,
            power: 1,
        }
    }

    pub fn inverse(self) -> Self {
        match self.kind {
            GenKind::Sigma => Generator {
                power: -self.power,
                ..self
            },
            GenKind::Alpha => self,
        }
    }

    fn cancels(self, next: Generator) -> bool {
        self.kind == next.kind && self.index == next.index && self.power == -next.power
            || self.kind == GenKind::Alpha && self == next
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.power) {
            (GenKind::Alpha, _) => write!(f, "a{}", self.index),
            (GenKind::Sigma, 1) => write!(f, "s{}", self.index),
            _ => write!(f, "S{}", self.index),
        }
    }
}

/// A freely reduced word; read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    n: usize,
    letters: Vec<Generator>,
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::BadStrandCount { n, min: 2 })
    } else {
        Ok(())
    }
}

impl GroupWord {
    pub fn empty(n: usize) -> Self {
        GroupWord {
            n,
            letters: Vec::new(),
        }
    }

    pub fn new(n: usize, letters: impl IntoIterator<Item = Generator>) -> Result<Self> {
        check_n(n)?;
        let mut w = GroupWord::empty(n);
        for g in letters {
            if g.index == 0 || g.index >= n {
                return Err(Error::IndexOutOfRange { index: g.index, n });
            }
            let g = match g.kind {
                GenKind::Alpha => Generator { power: 1, ..g },
                GenKind::Sigma if g.power.abs() != 1 => {
                    return Err(Error::BadParams(format!("sigma power {}", g.power)))
                }
                _ => g,
            };
            w.push(g);
        }
        Ok(w)
    }

    fn push(&mut self, g: Generator) {
        match self.letters.last() {
            Some(&last) if last.cancels(g) => {
                self.letters.pop();
            }
            _ => self.letters.push(g),
        }
    }

    pub fn gen(n: usize, g: Generator) -> Result<Self> {
        Self::new(n, [g])
    }

    /// θ = σ₁σ₂…σ_{n−1}.
    pub fn theta(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(Generator::sigma))
    }

    /// σ₀ = θ σ_{n−1} θ⁻¹.
    pub fn sigma0(n: usize) -> Result<Self> {
        let t = Self::theta(n)?;
        Ok(t.concat(&Self::gen(n, Generator::sigma(n - 1))?)?
            .concat(&t.inverse())?)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn uses_alpha(&self) -> bool {
        self.letters.iter().any(|g| g.kind == GenKind::Alpha)
    }

    fn same_n(&self, o: &Self) -> Result<()> {
        if self.n == o.n {
            Ok(())
        } else {
            Err(Error::StrandMismatch(self.n, o.n))
        }
    }

    pub fn concat(&self, o: &Self) -> Result<Self> {
        self.same_n(o)?;
        let mut w = self.clone();
        for &g in &o.letters {
            w.push(g);
        }
        Ok(w)
    }

    pub fn inverse(&self) -> Self {
        let mut w = GroupWord::empty(self.n);
        for g in self.letters.iter().rev() {
            w.push(g.inverse());
        }
        w
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.concat(o)?.concat(&self.inverse())?.concat(&o.inverse())
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::empty(self.n);
        for _ in 0..k.unsigned_abs() {
            for &g in &base.letters {
                w.push(g);
            }
        }
        w
    }

    /// Parses whitespace-separated `s<i>`, `S<i>`, `a<i>`, `theta`, `THETA`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        check_n(n)?;
        let mut w = GroupWord::empty(n);
        let mut pos = 0;
        for tok in text.split_whitespace() {
            let off = pos + text[pos..].find(tok).unwrap_or(0);
            pos = off + tok.len();
            match tok {
                "theta" => w = w.concat(&Self::theta(n)?)?,
                "THETA" => w = w.concat(&Self::theta(n)?.inverse())?,
                _ => {
                    let mut chars = tok.chars();
                    let head = chars.next().unwrap_or(' ');
                    let rest = chars.as_str();
                    let make: fn(usize) -> Generator = match head {
                        's' => Generator::sigma,
                        'S' => Generator::sigma_inv,
                        'a' => Generator::alpha,
                        _ => {
                            return Err(Error::Syntax {
                                pos: off,
                                msg: format!("unknown token `{tok}`"),
                            })
                        }
                    };
                    let index: usize = rest
                        .parse()
                        .ok()
                        .filter(|_| rest.chars().all(|c| c.is_ascii_digit()))
                        .ok_or_else(|| Error::Syntax {
                            pos: off + 1,
                            msg: format!("expected generator index in `{tok}`"),
                        })?;
                    if index == 0 || index >= n {
                        return Err(Error::IndexOutOfRange { index, n });
                    }
                    w.push(make(index));
                }
            }
        }
        Ok(w)
    }

    /// One word per line; `#` starts a comment, blank lines are skipped.
    pub fn parse_file(text: &str, n: usize) -> Result<Vec<Self>> {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .filter(|l| !l.trim().is_empty())
            .map(|l| Self::parse(l, n))
            .collect()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// A named equality `lhs = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relator {
    pub id: String,
    pub kind: u8,
    pub lhs: GroupWord,
    pub rhs: GroupWord,
}

fn rel(n: usize, id: String, kind: u8, lhs: &[Generator], rhs: &[Generator]) -> Relator {
    Relator {
        id,
        kind,
        lhs: GroupWord::new(n, lhs.iter().copied()).expect("valid relator"),
        rhs: GroupWord::new(n, rhs.iter().copied()).expect("valid relator"),
    }
}

/// Unreduced two-letter α_iα_i, kept as a literal pair so the relator stays visible.
fn alpha_square(n: usize, i: usize) -> Relator {
    Relator {
        id: format!("(1)@i={i}"),
        kind: 1,
        lhs: GroupWord {
            n,
            letters: vec![Generator::alpha(i), Generator::alpha(i)],
        },
        rhs: GroupWord::empty(n),
    }
}

/// The defining relations (1)–(8) as equal-word pairs, ids like `(7)@i=2`.
///
/// Distant commutations (2), (4) run over unordered pairs i < j; (6) over
/// ordered pairs, since α_iσ_j and α_jσ_i are different relations.
pub fn relators(n: usize) -> Result<Vec<Relator>> {
    if n < 3 {
        return Err(Error::BadStrandCount { n, min: 3 });
    }
    let (s, a) = (Generator::sigma, Generator::alpha);
    let mut out = Vec::new();
    for i in 1..n {
        out.push(alpha_square(n, i));
    }
    for i in 1..n {
        for j in i + 2..n {
            let id = format!("(2)@i={i},j={j}");
            out.push(rel(n, id, 2, &[a(i), a(j)], &[a(j), a(i)]));
        }
    }
    for i in 1..n - 1 {
        let id = format!("(3)@i={i}");
        out.push(rel(n, id, 3, &[a(i), a(i + 1), a(i)], &[a(i + 1), a(i), a(i + 1)]));
    }
    for i in 1..n {
        for j in i + 2..n {
            let id = format!("(4)@i={i},j={j}");
            out.push(rel(n, id, 4, &[s(i), s(j)], &[s(j), s(i)]));
        }
    }
    for i in 1..n - 1 {
        let id = format!("(5)@i={i}");
        out.push(rel(n, id, 5, &[s(i), s(i + 1), s(i)], &[s(i + 1), s(i), s(i + 1)]));
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) >= 2 {
                let id = format!("(6)@i={i},j={j}");
                out.push(rel(n, id, 6, &[a(i), s(j)], &[s(j), a(i)]));
            }
        }
    }
    for i in 1..n - 1 {
        let id = format!("(7)@i={i}");
        out.push(rel(n, id, 7, &[a(i), a(i + 1), s(i)], &[s(i + 1), a(i), a(i + 1)]));
    }
    for i in 1..n - 1 {
        let id = format!("(8)@i={i}");
        out.push(rel(n, id, 8, &[s(i), s(i + 1), a(i)], &[a(i + 1), s(i), s(i + 1)]));
    }
    Ok(out)
}

/// Expected number of relators: (n−1) + 2(n−2)(n−3) + 4(n−2).
pub fn relator_count(n: usize) -> usize {
    (n - 1) + 2 * (n - 2) * (n - 3) + 4 * (n - 2)
}

/// Consequences of the relations: σ_iα_{i+1}α_i = α_{i+1}α_iσ_{i+1},
/// σ_{i+1} = θσ_iθ⁻¹, α_{i+1} = θα_iθ⁻¹, (α_iα_{i+1})³ = 1.
pub fn derived_identities(n: usize) -> Result<Vec<Relator>> {
    if n < 3 {
        return Err(Error::BadStrandCount { n, min: 3 });
    }
    let theta = GroupWord::theta(n)?;
    let conj = |g: Generator| -> Result<GroupWord> {
        theta.concat(&GroupWord::gen(n, g)?)?.concat(&theta.inverse())
    };
    let (s, a) = (Generator::sigma, Generator::alpha);
    let mut out = Vec::new();
    for i in 1..n - 1 {
        out.push(rel(
            n,
            format!("(a)@i={i}"),
            b'a',
            &[s(i), a(i + 1), a(i)],
            &[a(i + 1), a(i), s(i + 1)],
        ));
    }
    for i in 1..n - 1 {
        out.push(Relator {
            id: format!("(b)@i={i}"),
            kind: b'b',
            lhs: GroupWord::gen(n, s(i + 1))?,
            rhs: conj(s(i))?,
        });
        out.push(Relator {
            id: format!("(c)@i={i}"),
            kind: b'c',
            lhs: GroupWord::gen(n, a(i + 1))?,
            rhs: conj(a(i))?,
        });
    }
    for i in 1..n - 1 {
        let pair = GroupWord::new(n, [a(i), a(i + 1)])?;
        out.push(Relator {
            id: format!("(d)@i={i}"),
            kind: b'd',
            lhs: pair.pow(3),
            rhs: GroupWord::empty(n),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_counts() {
        for n in 3..=8 {
            assert_eq!(relators(n).unwrap().len(), relator_count(n));
        }
        assert_eq!(relators(3).unwrap().len(), 6);
        assert_eq!(relators(6).unwrap().len(), 45);
        assert!(matches!(relators(2), Err(Error::BadStrandCount { .. })));
    }

    #[test]
    fn relator_examples() {
        let r4 = relators(4).unwrap();
        let lhs = GroupWord::parse("a1 s3", 4).unwrap();
        let rhs = GroupWord::parse("s3 a1", 4).unwrap();
        assert!(r4.iter().any(|r| r.lhs == lhs && r.rhs == rhs));
        let r5 = relators(5).unwrap();
        let lhs = GroupWord::parse("s2 s3 a2", 5).unwrap();
        let rhs = GroupWord::parse("a3 s2 s3", 5).unwrap();
        assert!(r5.iter().any(|r| r.lhs == lhs && r.rhs == rhs));
    }

    #[test]
    fn word_ops() {
        let s1 = GroupWord::parse("s1", 3).unwrap();
        assert!(s1.concat(&s1.inverse()).unwrap().is_empty());
        let th = GroupWord::theta(3).unwrap();
        assert_eq!(th.inverse().to_string(), "S2 S1");
        let c = th.pow(3).commutator(&GroupWord::parse("a1", 3).unwrap()).unwrap();
        assert_eq!(c.len(), 14);
        assert_eq!(c, GroupWord::parse("theta theta theta a1 THETA THETA THETA a1", 3).unwrap());
    }

    #[test]
    fn parsing() {
        assert_eq!(GroupWord::parse("s1 s2 a1", 3).unwrap().to_string(), "s1 s2 a1");
        assert_eq!(GroupWord::parse("theta", 4).unwrap().to_string(), "s1 s2 s3");
        assert!(GroupWord::parse("a1 a1", 3).unwrap().is_empty());
        assert_eq!(
            GroupWord::parse("s1 x2", 3),
            Err(Error::Syntax {
                pos: 3,
                msg: "unknown token `x2`".into()
            })
        );
        assert_eq!(
            GroupWord::parse("s3", 3),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
        let words = GroupWord::parse_file("s1 # first\n\n a1 s2\n", 3).unwrap();
        assert_eq!(words.len(), 2);
    }

    #[test]
    fn derived_examples() {
        let d3 = derived_identities(3).unwrap();
        let th = GroupWord::theta(3).unwrap();
        let a1 = GroupWord::parse("a1", 3).unwrap();
        let a2 = GroupWord::parse("a2", 3).unwrap();
        let c = th.concat(&a1).unwrap().concat(&th.inverse()).unwrap();
        assert!(d3.iter().any(|r| r.lhs == a2 && r.rhs == c));
        assert!(d3.iter().any(|r| r.rhs.is_empty() && r.lhs.len() == 6));
        let d4 = derived_identities(4).unwrap();
        let s2 = GroupWord::parse("s2", 4).unwrap();
        let th4 = GroupWord::theta(4).unwrap();
        let c = th4
            .concat(&GroupWord::parse("s1", 4).unwrap())
            .unwrap()
            .concat(&th4.inverse())
            .unwrap();
        assert!(d4.iter().any(|r| r.lhs == s2 && r.rhs == c));
    }
}
