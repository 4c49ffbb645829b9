//! Hyperbinary expansions: canonical digit words over {0,1,2} and the
//! counting functions attached to them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A hyperbinary expansion of a positive integer: a word over {0,1,2},
/// most-significant digit first, leading digit nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expansion {
    digits: Vec<u8>,
}

impl Expansion {
    /// Builds the canonical representative of a raw digit word: leading
    /// zeros are stripped, digits validated. Empty or all-zero words are
    /// rejected since they carry no positive value.
    pub fn new(word: &[u8]) -> Result<Self> {
        if let Some(&d) = word.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidDigit(d));
        }
        let start = word.iter().position(|&d| d != 0).ok_or(Error::EmptyWord)?;
        Ok(Expansion {
            digits: word[start..].to_vec(),
        })
    }

    /// Digits already known canonical (first digit nonzero, all in {0,1,2}).
    pub(crate) fn from_canonical(digits: Vec<u8>) -> Self {
        debug_assert!(!digits.is_empty() && digits[0] != 0);
        debug_assert!(digits.iter().all(|&d| d <= 2));
        Expansion { digits }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    #[allow(clippy::len_without_is_empty)] // canonical words are never empty
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// The integer Σ xᵢ·2^(k−i) represented by this word.
    pub fn value(&self) -> u64 {
        self.digits.iter().fold(0u64, |acc, &d| {
            acc.checked_mul(2)
                .and_then(|v| v.checked_add(u64::from(d)))
                .expect("expansion value overflows u64")
        })
    }

    /// Digit sum ω.
    pub fn weight(&self) -> u32 {
        self.digits.iter().map(|&d| u32::from(d)).sum()
    }

    pub fn has_zero(&self) -> bool {
        self.digits.contains(&0)
    }

    pub fn has_two(&self) -> bool {
        self.digits.contains(&2)
    }

    /// Number of maximal runs of consecutive 2's. Equals the outdegree of
    /// this node in A(n).
    pub fn blocks_of_twos(&self) -> usize {
        let mut blocks = 0;
        let mut in_block = false;
        for &d in &self.digits {
            if d == 2 {
                if !in_block {
                    blocks += 1;
                }
                in_block = true;
            } else {
                in_block = false;
            }
        }
        blocks
    }

    /// (i, j): how many single-step reductions separate this expansion
    /// from the binary expansion (i) and from the minimal one (j).
    pub fn distance_indices(&self) -> (u32, u32) {
        let n = self.value();
        let i = self.weight() - binary_expansion(n).weight();
        let j = minimal_expansion(n).weight() - self.weight();
        (i, j)
    }

    /// Short (length ⌊log₂ n⌋) or Long (length ⌊log₂ n⌋ + 1). Any other
    /// length breaks the expansion invariant.
    pub fn length_class(&self) -> Result<LengthClass> {
        let n = self.value();
        let k = floor_log2(n) as usize;
        match self.len() {
            l if l == k + 1 => Ok(LengthClass::Long),
            l if l == k => Ok(LengthClass::Short),
            _ => Err(Error::LengthInvariant {
                word: self.to_string(),
                n,
            }),
        }
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expansion({self})")
    }
}

impl FromStr for Expansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word: Vec<u8> = s
            .bytes()
            .map(|b| match b {
                b'0'..=b'9' => Ok(b - b'0'),
                _ => Err(Error::InvalidDigit(b)),
            })
            .collect::<Result<_>>()?;
        Expansion::new(&word)
    }
}

/// Shortlex: shorter words first, ties broken lexicographically.
impl Ord for Expansion {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.digits.cmp(&other.digits))
    }
}

impl PartialOrd for Expansion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortlex_compare(a: &Expansion, b: &Expansion) -> Ordering {
    a.cmp(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthClass {
    Short,
    Long,
}

/// ⌊log₂ n⌋ for n ≥ 1.
pub fn floor_log2(n: u64) -> u32 {
    assert!(n >= 1);
    63 - n.leading_zeros()
}

/// Canonicalize a raw digit word (alias for `Expansion::new`).
pub fn normalize(word: &[u8]) -> Result<Expansion> {
    Expansion::new(word)
}

/// The unique hyperbinary expansion of n without 0-digits; root of A(n).
///
/// Built least-significant digit first: an odd n must end in 1, an even n
/// must end in 2 (a trailing 0 is excluded), then recurse on the prefix.
pub fn minimal_expansion(n: u64) -> Expansion {
    assert!(n >= 1);
    let mut rev = Vec::new();
    let mut m = n;
    while m > 0 {
        if m % 2 == 1 {
            rev.push(1);
            m = (m - 1) / 2;
        } else {
            rev.push(2);
            m = (m - 2) / 2;
        }
    }
    rev.reverse();
    Expansion::from_canonical(rev)
}

/// The unique binary expansion of n; sink of A(n).
pub fn binary_expansion(n: u64) -> Expansion {
    assert!(n >= 1);
    let k = floor_log2(n);
    let digits = (0..=k)
        .rev()
        .map(|i| ((n >> i) & 1) as u8)
        .collect::<Vec<_>>();
    Expansion::from_canonical(digits)
}

/// All hyperbinary expansions of n, sorted by shortlex.
///
/// Parity split on the last digit: odd n ends in 1, even n ends in 0 or 2;
/// recurse on the remaining prefix value.
pub fn enumerate_expansions(n: u64) -> Result<Vec<Expansion>> {
    if n == 0 {
        return Err(Error::ZeroNotAllowed);
    }
    let mut memo: HashMap<u64, Vec<Vec<u8>>> = HashMap::new();
    let mut out: Vec<Expansion> = enumerate_rec(n, &mut memo)
        .iter()
        .map(|w| Expansion::from_canonical(w.clone()))
        .collect();
    out.sort();
    Ok(out)
}

/// Words (MSB first, leading digit nonzero) for n; n = 0 yields the empty
/// word so that a trailing digit can close a recursion branch.
fn enumerate_rec(n: u64, memo: &mut HashMap<u64, Vec<Vec<u8>>>) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    if let Some(hit) = memo.get(&n) {
        return hit.clone();
    }
    let mut words = Vec::new();
    if n % 2 == 1 {
        for mut w in enumerate_rec((n - 1) / 2, memo) {
            w.push(1);
            words.push(w);
        }
    } else {
        for mut w in enumerate_rec(n / 2, memo) {
            if !w.is_empty() {
                // a leading 0 is not a canonical word
                w.push(0);
                words.push(w);
            }
        }
        for mut w in enumerate_rec((n - 2) / 2, memo) {
            w.push(2);
            words.push(w);
        }
    }
    memo.insert(n, words.clone());
    words
}

/// Memoized table of b(n), the number of hyperbinary expansions of n,
/// with the convention b(0) = 1.
#[derive(Debug, Default)]
pub struct CountTable {
    cache: HashMap<u64, u64>,
}

impl CountTable {
    pub fn new() -> Self {
        CountTable::default()
    }

    /// b(n) via b(0)=b(1)=1, b(2n+1)=b(n), b(2n)=b(n)+b(n−1).
    pub fn count(&mut self, n: u64) -> u64 {
        if n <= 1 {
            return 1;
        }
        if let Some(&hit) = self.cache.get(&n) {
            return hit;
        }
        let v = if n % 2 == 1 {
            self.count(n / 2)
        } else {
            self.count(n / 2)
                .checked_add(self.count(n / 2 - 1))
                .expect("b(n) overflows u64")
        };
        self.cache.insert(n, v);
        v
    }
}

pub fn count_expansions(n: u64, table: &mut CountTable) -> u64 {
    table.count(n)
}

/// Stern's diatomic sequence s(n) (OEIS A002487): s(0)=0, s(1)=1,
/// s(2n)=s(n), s(2n+1)=s(n)+s(n+1). Computed by descending the pair
/// (s(n), s(n+1)).
pub fn stern(n: u64) -> u64 {
    fn pair(n: u64) -> (u64, u64) {
        if n == 0 {
            return (0, 1);
        }
        if n % 2 == 1 {
            let (a, b) = pair(n / 2);
            (a + b, b)
        } else {
            let (a, b) = pair(n / 2);
            (a, a + b)
        }
    }
    pair(n).0
}
