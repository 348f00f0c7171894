use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;

use super::{ArcId, Diagram, OrientedArc};
use crate::coeff::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Oriented,
    /// A loop and its reverse are identified.
    Unoriented,
}

/// Start index of the lexicographically least rotation of `s` (Booth).
pub fn canonical_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && *sj != s[k % n] {
            if *sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

fn rotated<T: Clone>(s: &[T], start: usize) -> Vec<T> {
    s[start..].iter().chain(&s[..start]).cloned().collect()
}

fn reversed_word(w: &[OrientedArc]) -> Vec<OrientedArc> {
    w.iter().rev().map(|oa| oa.flipped()).collect()
}

/// A closed walk along arcs, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loop {
    word: Vec<OrientedArc>,
}

impl Loop {
    /// Check that `word` is a closed walk in `d` without repeated arcs.
    pub fn new(d: &Diagram, word: Vec<OrientedArc>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::MalformedLoop("empty word".into()));
        }
        let mut seen = HashSet::new();
        for oa in &word {
            if !d.contains_arc(oa.arc) {
                return Err(Error::UnknownArc(oa.arc.to_string()));
            }
            if !seen.insert(oa.arc) {
                return Err(Error::MalformedLoop(format!("arc `{}` repeated", d.arc_name(oa.arc))));
            }
        }
        for (k, a) in word.iter().enumerate() {
            let b = word[(k + 1) % word.len()];
            match (d.head(*a), d.tail(b)) {
                (None, None) if word.len() == 1 => {}
                (Some(p), Some(q)) if p == q => {}
                _ => {
                    return Err(Error::MalformedLoop(format!(
                        "`{}` does not continue into `{}`",
                        d.arc_name(a.arc),
                        d.arc_name(b.arc)
                    )))
                }
            }
        }
        Ok(Self::from_word_unchecked(word))
    }

    pub(crate) fn from_word_unchecked(word: Vec<OrientedArc>) -> Self {
        let start = canonical_rotation(&word);
        Loop {
            word: rotated(&word, start),
        }
    }

    pub fn word(&self) -> &[OrientedArc] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.word.iter().map(|oa| oa.arc)
    }

    /// Same loop traversed backwards.
    pub fn reversed(&self) -> Loop {
        Loop::from_word_unchecked(reversed_word(&self.word))
    }

    pub fn canonical(&self, orientation: Orientation) -> Loop {
        match orientation {
            Orientation::Oriented => self.clone(),
            Orientation::Unoriented => self.clone().min(self.reversed()),
        }
    }

    pub fn render(&self, d: &Diagram) -> String {
        let parts: Vec<String> = self
            .word
            .iter()
            .map(|oa| {
                let name = d.arc_name(oa.arc);
                if oa.reversed {
                    format!("{name}~")
                } else {
                    name
                }
            })
            .collect();
        format!("W[{}]", parts.join(" "))
    }
}

/// Product of Wilson loops: a sorted multiset of loops. Empty is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    loops: Vec<Loop>,
}

impl Monomial {
    pub fn new(mut loops: Vec<Loop>) -> Self {
        loops.sort();
        Monomial { loops }
    }

    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn single(l: Loop) -> Self {
        Monomial { loops: vec![l] }
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    pub fn degree(&self) -> usize {
        self.loops.len()
    }

    pub fn is_one(&self) -> bool {
        self.loops.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.loops.iter().chain(&other.loops).cloned().collect())
    }

    /// The monomial with the loop at `index` removed.
    pub fn without(&self, index: usize) -> Monomial {
        let mut loops = self.loops.clone();
        loops.remove(index);
        Monomial { loops }
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.loops.iter().flat_map(Loop::arcs)
    }

    pub fn canonical(&self, orientation: Orientation) -> Monomial {
        Monomial::new(self.loops.iter().map(|l| l.canonical(orientation)).collect())
    }

    pub fn render(&self, d: &Diagram) -> String {
        if self.loops.is_empty() {
            return "1".into();
        }
        self.loops.iter().map(|l| l.render(d)).collect::<Vec<_>>().join(" ")
    }
}

/// Finite linear combination of monomials. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSum<S = crate::coeff::Series> {
    terms: BTreeMap<Monomial, S>,
}

impl<S> Default for FormalSum<S> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> FormalSum<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.map(|x| x.scale(r))
    }

    /// Multiply every monomial by `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.mul(m), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FormalSum<T> {
        let mut out = FormalSum::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn canonical(&self, orientation: Orientation) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.canonical(orientation), c.clone());
        }
        out
    }

    pub fn render(&self, d: &Diagram, coeff: impl Fn(&S) -> String) -> String {
        let rows: Vec<(String, String)> = self.terms.iter().map(|(m, c)| (coeff(c), m.render(d))).collect();
        let width = rows.iter().map(|(c, _)| c.chars().count()).max().unwrap_or(0);
        rows.iter().map(|(c, m)| format!("{c:<width$}  {m}\n")).collect()
    }
}

impl<S: Scalar> FromIterator<(Monomial, S)> for FormalSum<S> {
    fn from_iter<I: IntoIterator<Item = (Monomial, S)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }
}

/// All `(word, position)` pairs whose arc runs into `point`.
pub(crate) fn find_heading(d: &Diagram, words: &[Vec<OrientedArc>], point: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (w, word) in words.iter().enumerate() {
        for (k, oa) in word.iter().enumerate() {
            if d.head(*oa) == Some(point) {
                out.push((w, k));
            }
        }
    }
    out
}

/// Splice two words at arcs `x[i]` and `y[j]`, which both run into the same
/// point: walk `x` from the point back to it, then `y` (backwards when
/// `reverse_second`).
pub(crate) fn join_words(
    x: &[OrientedArc],
    i: usize,
    y: &[OrientedArc],
    j: usize,
    reverse_second: bool,
) -> Vec<OrientedArc> {
    let mut out = rotated(x, (i + 1) % x.len());
    let seg = rotated(y, (j + 1) % y.len());
    if reverse_second {
        out.extend(reversed_word(&seg));
    } else {
        out.extend(seg);
    }
    out
}

/// Resmooth a word at arcs `w[i]` and `w[j]`, which both run into the same
/// point. The orientation-preserving smoothing swaps their successors and so
/// splits the word in two; the reversing one keeps a single word with the
/// second segment traversed backwards.
pub(crate) fn split_word(w: &[OrientedArc], i: usize, j: usize, reverse_second: bool) -> Vec<Vec<OrientedArc>> {
    let n = w.len();
    let r = rotated(w, (i + 1) % n);
    let jj = (j + n - i - 1) % n;
    let (first, second) = r.split_at(jj + 1);
    if reverse_second {
        let mut out = first.to_vec();
        out.extend(reversed_word(second));
        vec![out]
    } else {
        vec![first.to_vec(), second.to_vec()]
    }
}

pub(crate) fn concat_at(d: &Diagram, c: &Loop, c2: &Loop, point: usize, reverse_second: bool) -> Result<Loop> {
    let not_inter = || Error::NotInterCrossing {
        point: d
            .points()
            .get(point)
            .map(|p| p.id.clone())
            .unwrap_or_else(|| format!("#{point}")),
    };
    let words = [c.word.clone(), c2.word.clone()];
    let hits = find_heading(d, &words, point);
    let (i, j) = match hits.as_slice() {
        [(0, i), (1, j)] => (*i, *j),
        _ => return Err(not_inter()),
    };
    let (sa, sb) = (d.head_strand(c.word[i]), d.head_strand(c2.word[j]));
    if sa.map(|s| s.slot) == sb.map(|s| s.slot) {
        return Err(not_inter());
    }
    Ok(Loop::from_word_unchecked(join_words(
        &c.word,
        i,
        &c2.word,
        j,
        reverse_second,
    )))
}
