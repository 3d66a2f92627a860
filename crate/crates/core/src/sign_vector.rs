//! Sign vectors over a finite ground set and the bitset they are built from.
//!
//! A [`SignVector`] is stored as two [`ElementSet`]s, its positive and its
//! negative part. Both are word arrays that stay inline for ground sets of
//! up to 64 elements and spill to the heap above that.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 1]>;

fn word_count(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A subset of `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    len: usize,
    words: Words,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        ElementSet { len, words: smallvec![0; word_count(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Size of the ambient ground set.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        Self::full(self.len).difference(self)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        ElementSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Ascending iterator over the members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size first, then by the sorted member lists.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.count().cmp(&other.count()).then_with(|| self.iter().cmp(other.iter()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn of<T: num_traits::Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Plus
        } else if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }
}

/// An element of `{-, 0, +}^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    plus: ElementSet,
    minus: ElementSet,
}

impl SignVector {
    pub fn zero(n: usize) -> Self {
        SignVector { plus: ElementSet::empty(n), minus: ElementSet::empty(n) }
    }

    pub fn all_plus(n: usize) -> Self {
        SignVector { plus: ElementSet::full(n), minus: ElementSet::empty(n) }
    }

    /// Builds a sign vector from its positive and negative parts, which must be disjoint.
    pub fn from_parts(plus: ElementSet, minus: ElementSet) -> Result<Self> {
        check_len(plus.universe(), minus.universe())?;
        if !plus.is_disjoint(&minus) {
            return Err(Error::Invalid("positive and negative parts overlap".into()));
        }
        Ok(SignVector { plus, minus })
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut v = Self::zero(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            v.set(i, s);
        }
        v
    }

    /// The vector that is zero on `zeros` and positive elsewhere.
    pub fn plus_off(zeros: &ElementSet) -> Self {
        SignVector { plus: zeros.complement(), minus: ElementSet::empty(zeros.universe()) }
    }

    pub fn len(&self) -> usize {
        self.plus.universe()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        if self.plus.contains(i) {
            Sign::Plus
        } else if self.minus.contains(i) {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        self.plus.remove(i);
        self.minus.remove(i);
        match s {
            Sign::Plus => self.plus.insert(i),
            Sign::Minus => self.minus.insert(i),
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn positive(&self) -> &ElementSet {
        &self.plus
    }

    pub fn negative(&self) -> &ElementSet {
        &self.minus
    }

    pub fn support(&self) -> ElementSet {
        self.plus.union(&self.minus)
    }

    pub fn zero_set(&self) -> ElementSet {
        self.support().complement()
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.minus.is_empty()
    }

    /// `self` is a face of `cell`: its support is contained in the support
    /// of `cell` and the two agree wherever `self` is nonzero.
    pub fn is_face_of(&self, cell: &SignVector) -> Result<bool> {
        check_len(self.len(), cell.len())?;
        Ok(self.plus.is_subset(&cell.plus) && self.minus.is_subset(&cell.minus))
    }

    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        check_len(self.len(), other.len())?;
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> SignVector {
        let supp = self.support();
        SignVector {
            plus: self.plus.union(&other.plus.difference(&supp)),
            minus: self.minus.union(&other.minus.difference(&supp)),
        }
    }

    pub fn negate(&self) -> SignVector {
        SignVector { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    /// Flips the signs at the positions in `set`.
    pub fn reorient(&self, set: &ElementSet) -> Result<SignVector> {
        check_len(self.len(), set.universe())?;
        Ok(self.reorient_unchecked(set))
    }

    pub(crate) fn reorient_unchecked(&self, set: &ElementSet) -> SignVector {
        let keep = set.complement();
        SignVector {
            plus: self.plus.intersection(&keep).union(&self.minus.intersection(set)),
            minus: self.minus.intersection(&keep).union(&self.plus.intersection(set)),
        }
    }

    /// Reorients on the given positions, failing on any index outside the ground set.
    pub fn reorient_indices(&self, indices: &[usize]) -> Result<SignVector> {
        let n = self.len();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        Ok(self.reorient_unchecked(&ElementSet::from_indices(n, indices.iter().copied())))
    }

    /// True when `self` and `other` agree in sign wherever both are nonzero.
    pub fn is_conformal_to(&self, other: &SignVector) -> bool {
        self.plus.is_disjoint(&other.minus) && self.minus.is_disjoint(&other.plus)
    }

    /// Oriented-matroid orthogonality: on the common support the sign
    /// products are either all zero (disjoint supports) or take both signs.
    pub fn is_orthogonal_to(&self, other: &SignVector) -> bool {
        let agree = !self.plus.is_disjoint(&other.plus) || !self.minus.is_disjoint(&other.minus);
        let disagree = !self.plus.is_disjoint(&other.minus) || !self.minus.is_disjoint(&other.plus);
        agree == disagree
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left: a, right: b })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                '0' => Ok(Sign::Zero),
                other => Err(Error::Parse(format!("invalid sign character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignVector::from_signs(&signs))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic under `- < 0 < +`.
impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.signs().cmp(other.signs()))
    }
}

impl serde::Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
