//! Right action of the welded braid group on the free group F_n by
//! conjugating automorphisms; decides equality of words.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::word::{GenKind, Generator, GroupWord};

static LETTER_CAP: AtomicUsize = AtomicUsize::new(1_000_000);

pub fn letter_cap() -> usize {
    LETTER_CAP.load(Ordering::Relaxed)
}

/// Caps the total number of letters across all images of one automorphism.
pub fn set_letter_cap(cap: usize) {
    LETTER_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Freely reduced word in x_1…x_n; letters are ±index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn gen(i: usize) -> Self {
        FreeWord(vec![i as i32])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = FreeWord::default();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// `Some(p)` when the word is `W⁻¹ x_p W`.
    pub fn conjugate_of(&self) -> Option<usize> {
        let k = self.0.len();
        if k % 2 == 0 {
            return None;
        }
        let mid = k / 2;
        if self.0[mid] <= 0 {
            return None;
        }
        (0..mid)
            .all(|i| self.0[i] == -self.0[k - 1 - i])
            .then_some(self.0[mid] as usize)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("x{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Automorphism given by the images of x_1…x_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAut {
    n: usize,
    images: Vec<FreeWord>,
}

impl FreeAut {
    pub fn identity(n: usize) -> Self {
        FreeAut {
            n,
            images: (1..=n).map(FreeWord::gen).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Image of a word under this automorphism.
    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        let cap = letter_cap();
        let mut out = FreeWord::default();
        for &l in &w.0 {
            let img = &self.images[(l.unsigned_abs() - 1) as usize];
            if l > 0 {
                for &m in &img.0 {
                    out.push(m);
                }
            } else {
                for &m in img.0.iter().rev() {
                    out.push(-m);
                }
            }
            if out.len() > cap {
                return Err(Error::LetterCapExceeded(cap));
            }
        }
        Ok(out)
    }

    /// `self` followed by `next` (right action): x ↦ next(self(x)) letterwise,
    /// i.e. the images of `next` substituted into the images of `self`.
    pub fn then(&self, next: &FreeAut) -> Result<FreeAut> {
        if self.n != next.n {
            return Err(Error::StrandMismatch(self.n, next.n));
        }
        let cap = letter_cap();
        let mut total = 0;
        let mut images = Vec::with_capacity(self.n);
        for w in &self.images {
            let img = next.apply(w)?;
            total += img.len();
            if total > cap {
                return Err(Error::LetterCapExceeded(cap));
            }
            images.push(img);
        }
        Ok(FreeAut { n: self.n, images })
    }

    /// The permutation π with x_i ↦ W_i⁻¹ x_{π(i)} W_i, if every image has that form.
    pub fn conjugating_permutation(&self) -> Option<Vec<usize>> {
        let perm: Vec<usize> = self
            .images
            .iter()
            .map(|w| w.conjugate_of())
            .collect::<Option<_>>()?;
        let mut seen = vec![false; self.n + 1];
        for &p in &perm {
            if p == 0 || p > self.n || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(perm)
    }
}

impl fmt::Display for FreeAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            writeln!(f, "x{} -> {}", i + 1, w)?;
        }
        Ok(())
    }
}

/// σ_i: x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹x_ix_{i+1}; σ_i⁻¹: x_i ↦ x_ix_{i+1}x_i⁻¹,
/// x_{i+1} ↦ x_i; α_i swaps x_i and x_{i+1}.
pub fn generator_aut(g: Generator, n: usize) -> Result<FreeAut> {
    if g.index == 0 || g.index >= n {
        return Err(Error::IndexOutOfRange { index: g.index, n });
    }
    let i = g.index as i32;
    let mut a = FreeAut::identity(n);
    let (x, y) = (g.index - 1, g.index);
    match (g.kind, g.power) {
        (GenKind::Alpha, _) => a.images.swap(x, y),
        (GenKind::Sigma, 1) => {
            a.images[x] = FreeWord::from_letters([i + 1]);
            a.images[y] = FreeWord::from_letters([-(i + 1), i, i + 1]);
        }
        (GenKind::Sigma, _) => {
            a.images[x] = FreeWord::from_letters([i, i + 1, -i]);
            a.images[y] = FreeWord::from_letters([i]);
        }
    }
    Ok(a)
}

/// Composition of the generator automorphisms in reading order.
pub fn word_to_aut(w: &GroupWord) -> Result<FreeAut> {
    let n = w.n();
    let mut acc = FreeAut::identity(n);
    for &g in w.letters() {
        acc = acc.then(&generator_aut(g, n)?)?;
    }
    Ok(acc)
}

pub fn words_equal(w1: &GroupWord, w2: &GroupWord) -> Result<bool> {
    if w1.n() != w2.n() {
        return Err(Error::StrandMismatch(w1.n(), w2.n()));
    }
    Ok(word_to_aut(w1)? == word_to_aut(w2)?)
}
