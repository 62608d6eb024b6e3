//! Packed words over a small alphabet and the Lyndon machinery on them.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of letters in an alphabet (four bits per letter).
pub const MAX_LETTERS: usize = 16;
/// Maximum word length that fits in the packed representation.
pub const MAX_WORD_LEN: usize = 16;

/// A word of at most [`MAX_WORD_LEN`] letters drawn from at most
/// [`MAX_LETTERS`] generators, packed into a single `u64`.
///
/// The derived order compares length first and then the letters
/// lexicographically, so a `BTreeMap<Word, _>` iterates degree by degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    code: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, code: 0 };

    pub fn letter(i: usize) -> Word {
        assert!(i < MAX_LETTERS, "letter index out of range");
        Word { len: 1, code: i as u64 }
    }

    pub fn from_letters(letters: &[usize]) -> Word {
        assert!(letters.len() <= MAX_WORD_LEN, "word too long");
        let mut code = 0u64;
        for &l in letters {
            assert!(l < MAX_LETTERS, "letter index out of range");
            code = (code << 4) | l as u64;
        }
        Word { len: letters.len() as u8, code }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn at(&self, i: usize) -> usize {
        debug_assert!(i < self.len());
        ((self.code >> (4 * (self.len() - 1 - i))) & 0xf) as usize
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).map(move |i| self.at(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.letters().collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        assert!(self.len() + other.len() <= MAX_WORD_LEN, "word too long");
        if other.len == 0 {
            return *self;
        }
        Word {
            len: self.len + other.len,
            code: (self.code << (4 * other.len())) | other.code,
        }
    }

    /// Letters `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        let letters = self.to_vec();
        Word::from_letters(&letters[start..end])
    }

    fn rotation(&self, k: usize) -> Word {
        self.slice(k, self.len()).concat(&self.slice(0, k))
    }

    /// Strictly smaller than every proper rotation.
    pub fn is_lyndon(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        (1..self.len()).all(|k| *self < self.rotation(k))
    }

    /// Standard factorisation `w = u v` of a Lyndon word of length at least
    /// two, where `v` is the longest proper suffix that is itself Lyndon.
    pub fn standard_factorization(&self) -> (Word, Word) {
        debug_assert!(self.len() >= 2 && self.is_lyndon());
        let split = (1..self.len())
            .find(|&i| self.slice(i, self.len()).is_lyndon())
            .expect("a Lyndon word always has a Lyndon proper suffix");
        (self.slice(0, split), self.slice(split, self.len()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(")?;
        for l in self.letters() {
            write!(f, "{l:x}")?;
        }
        write!(f, ")")
    }
}

/// All Lyndon words of exactly `degree` letters over `k` letters, in
/// lexicographic order (Duval's generation algorithm).
pub fn lyndon_words(k: usize, degree: usize) -> Result<Vec<Word>> {
    if k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if degree == 0 || degree > MAX_WORD_LEN {
        return Err(Error::InvalidInput(format!("degree {degree} out of range")));
    }
    let mut out = Vec::new();
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        if w.len() == degree {
            out.push(Word::from_letters(&w));
        }
        let m = w.len();
        while w.len() < degree {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    Ok(out)
}

fn mobius(mut n: u64) -> i128 {
    let mut result = 1i128;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`n` component of the free Lie algebra on `k`
/// generators: `(1/n) Σ_{d | n} μ(d) k^{n/d}`.
pub fn witt_dimension(k: usize, n: usize) -> u64 {
    assert!(n >= 1, "degree must be positive");
    let k = k as i128;
    let mut total = 0i128;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(d as u64) * k.pow((n / d) as u32);
        }
    }
    (total / n as i128) as u64
}
