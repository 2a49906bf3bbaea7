//! The Weyl group of type `A_{n-1}` as the symmetric group `S_n`.
//!
//! Permutations are stored zero-based and exposed one-based. Products are
//! compositions: `(v * w)(k) = v(w(k))`, so right multiplication by `s_i`
//! swaps the entries in positions `i` and `i + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct WeylElement {
    perm: Vec<u8>,
    length: u32,
}

impl WeylElement {
    fn from_zero_based(perm: Vec<u8>) -> Self {
        let mut length = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    length += 1;
                }
            }
        }
        WeylElement { perm, length }
    }

    pub fn identity(n: usize) -> Self {
        WeylElement { perm: (0..n as u8).collect(), length: 0 }
    }

    /// From one-line notation with values in `1..=n`.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Schema(format!("not a permutation: {values:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Self::from_zero_based(values.iter().map(|&v| (v - 1) as u8).collect()))
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.perm.iter().map(|&v| v as usize + 1).collect()
    }

    /// Image of the zero-based index `k`, zero-based.
    pub fn apply(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Simple reflection `s_i`, `1 <= i <= n - 1`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_index(n, i)?;
        let mut perm: Vec<u8> = (0..n as u8).collect();
        perm.swap(i - 1, i);
        Ok(WeylElement { perm, length: 1 })
    }

    /// The longest element `w_0`, reversing `1..n`.
    pub fn longest(n: usize) -> Self {
        Self::from_zero_based((0..n as u8).rev().collect())
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word {
            check_index(n, i)?;
            w = w.mul_simple_right(i);
        }
        Ok(w)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "rank mismatch in product");
        Self::from_zero_based(other.perm.iter().map(|&k| self.perm[k as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (k, &v) in self.perm.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        WeylElement { perm: inv, length: self.length }
    }

    /// `w * s_i`: swaps positions `i` and `i + 1`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let mut perm = self.perm.clone();
        perm.swap(i - 1, i);
        let length = if self.perm[i - 1] < self.perm[i] { self.length + 1 } else { self.length - 1 };
        WeylElement { perm, length }
    }

    /// `s_i * w`: swaps the values `i` and `i + 1`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        self.inverse().mul_simple_right(i).inverse()
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.perm[i - 1] > self.perm[i]
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: u8| self.perm.iter().position(|&x| x == v).unwrap();
        pos(i as u8 - 1) > pos(i as u8)
    }

    /// All of `S_n`, ordered by length then one-line notation.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut perm: Vec<u8> = (0..n as u8).collect();
        permutations(&mut perm, 0, &mut out);
        out.sort();
        out
    }

    /// `r[i][j] = #{k <= j : w(k) >= i}` over zero-based `i, j`.
    fn rank_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut r = vec![vec![0u8; n]; n];
        for i in 0..n {
            let mut count = 0;
            for j in 0..n {
                if self.perm[j] as usize >= i {
                    count += 1;
                }
                r[i][j] = count;
            }
        }
        r
    }

    /// Bruhat order by the rank-matrix criterion.
    pub fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        if self.length > other.length {
            return Ok(false);
        }
        let (a, b) = (self.rank_matrix(), other.rank_matrix());
        Ok(a.iter().zip(&b).all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x <= y)))
    }

    /// Lexicographically least reduced word.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut letters = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while !w.is_identity() {
            let i = (1..self.n()).find(|&i| w.has_left_descent(i)).unwrap();
            letters.push(i);
            w = w.mul_simple_left(i);
        }
        ReducedWord { n: self.n(), letters }
    }

    /// Inversion set `{(i, j) : i < j, w(i) > w(j)}`, one-based. The pair
    /// `(i, j)` encodes the positive root `e_i - e_j`.
    pub fn inversion_set(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.perm[i] > self.perm[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

fn permutations(perm: &mut Vec<u8>, k: usize, out: &mut Vec<WeylElement>) {
    if k == perm.len() {
        out.push(WeylElement::from_zero_based(perm.clone()));
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, out);
        perm.swap(k, i);
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.length, &self.perm).cmp(&(other.length, &other.perm))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl From<WeylElement> for Vec<usize> {
    fn from(w: WeylElement) -> Self {
        w.one_line()
    }
}

impl TryFrom<Vec<usize>> for WeylElement {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::from_one_line(&v)
    }
}

/// A reduced word `i_1 ... i_k` over generators `1..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        let w = WeylElement::from_word(n, &letters)?;
        if w.length() != letters.len() {
            return Err(Error::Schema(format!("word {letters:?} is not reduced")));
        }
        Ok(ReducedWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self) -> WeylElement {
        WeylElement::from_word(self.n, &self.letters).expect("letters validated")
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn all_for(w: &WeylElement) -> Vec<ReducedWord> {
        fn rec(w: &WeylElement, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if w.is_identity() {
                out.push(prefix.clone());
                return;
            }
            for i in 1..w.n() {
                if w.has_left_descent(i) {
                    prefix.push(i);
                    rec(&w.mul_simple_left(i), prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(w, &mut Vec::new(), &mut out);
        out.into_iter().map(|letters| ReducedWord { n: w.n(), letters }).collect()
    }
}

/// The positive subexpression of a reduced word for `w` with product `v`.
///
/// `stations[j]` is `v_(j)`; positions in `jplus` and `jcirc` are one-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSubexpression {
    pub word: ReducedWord,
    pub stations: Vec<WeylElement>,
    pub jplus: Vec<usize>,
    pub jcirc: Vec<usize>,
}

impl PositiveSubexpression {
    /// Right-to-left greedy: starting from `v`, step down by `s_{i_j}`
    /// whenever that shortens.
    pub fn new(word: &ReducedWord, v: &WeylElement) -> Result<Self> {
        if v.n() != word.n() {
            return Err(Error::RankMismatch(v.n(), word.n()));
        }
        let k = word.len();
        let mut stations = vec![WeylElement::identity(v.n()); k + 1];
        let mut jplus = Vec::new();
        let mut jcirc = Vec::new();
        let mut cur = v.clone();
        stations[k] = cur.clone();
        for j in (1..=k).rev() {
            let i = word.letters[j - 1];
            if cur.has_right_descent(i) {
                cur = cur.mul_simple_right(i);
                jplus.push(j);
            } else {
                jcirc.push(j);
            }
            stations[j - 1] = cur.clone();
        }
        if !cur.is_identity() {
            return Err(Error::NotBelow { v: v.to_string(), w: word.product().to_string() });
        }
        jplus.reverse();
        jcirc.reverse();
        Ok(PositiveSubexpression { word: word.clone(), stations, jplus, jcirc })
    }

    pub fn v(&self) -> &WeylElement {
        self.stations.last().unwrap()
    }

    pub fn w(&self) -> WeylElement {
        self.word.product()
    }

    /// Checks the defining conditions directly.
    pub fn is_valid(&self) -> bool {
        let k = self.word.len();
        if self.stations.len() != k + 1 || !self.stations[0].is_identity() {
            return false;
        }
        let mut plus = Vec::new();
        for j in 1..=k {
            let i = self.word.letters[j - 1];
            let prev = &self.stations[j - 1];
            let up = prev.mul_simple_right(i);
            if up.length() < prev.length() {
                return false;
            }
            if self.stations[j] == up {
                plus.push(j);
            } else if self.stations[j] != *prev {
                return false;
            }
        }
        let circ: Vec<usize> = (1..=k).filter(|j| !plus.contains(j)).collect();
        plus == self.jplus && circ == self.jcirc && self.jplus.len() == self.v().length()
    }
}

/// A subset `J` of the simple reflections `{1..n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parabolic {
    n: usize,
    members: Vec<usize>,
}

impl Parabolic {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut m: Vec<usize> = members.into_iter().collect();
        for &i in &m {
            check_index(n, i)?;
        }
        m.sort_unstable();
        m.dedup();
        Ok(Parabolic { n, members: m })
    }

    pub fn empty(n: usize) -> Self {
        Parabolic { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Parabolic { n, members: (1..n).collect() }
    }

    /// All `2^(n-1)` subsets, by size then lexicographically.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (0u32..1 << (n - 1))
            .map(|mask| Parabolic { n, members: (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect() })
            .collect();
        out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() + 1 == self.n
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..self.n).filter(|i| !self.contains(*i)).collect()
    }

    /// `J* = {n - j}`.
    pub fn star(&self) -> Self {
        Parabolic::new(self.n, self.members.iter().map(|j| self.n - j)).unwrap()
    }

    /// Zero-based position blocks: `i` and `i+1` share a block iff `i ∈ J`.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..self.n {
            if !self.contains(i) {
                out.push(start..i);
                start = i;
            }
        }
        out.push(start..self.n);
        out
    }

    /// Block index of each zero-based position.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (b, r) in self.blocks().into_iter().enumerate() {
            for k in r {
                out[k] = b;
            }
        }
        out
    }

    /// `w_0^J`, reversing each block.
    pub fn longest(&self) -> WeylElement {
        let mut perm = Vec::with_capacity(self.n);
        for r in self.blocks() {
            perm.extend(r.rev().map(|k| k as u8));
        }
        WeylElement::from_zero_based(perm)
    }

    /// Whether `w ∈ W_J`, i.e. `w` preserves every block.
    pub fn contains_element(&self, w: &WeylElement) -> bool {
        let block = self.block_of();
        (0..self.n).all(|k| block[k] == block[w.apply(k)])
    }

    /// Whether `w ∈ W^J`, i.e. `l(w s_j) > l(w)` for every `j ∈ J`.
    pub fn is_min_coset_rep(&self, w: &WeylElement) -> bool {
        self.members.iter().all(|&j| !w.has_right_descent(j))
    }

    /// Minimal-length representative of `w W_J`.
    pub fn coset_min(&self, w: &WeylElement) -> WeylElement {
        let mut perm = w.perm.clone();
        for r in self.blocks() {
            perm[r].sort_unstable();
        }
        WeylElement::from_zero_based(perm)
    }

    pub fn subgroup(&self) -> Vec<WeylElement> {
        WeylElement::all(self.n).into_iter().filter(|w| self.contains_element(w)).collect()
    }

    pub fn min_coset_reps(&self) -> Vec<WeylElement> {
        WeylElement::all(self.n).into_iter().filter(|w| self.is_min_coset_rep(w)).collect()
    }
}

impl fmt::Debug for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}
