//! Fixed-length bit strings, the search space `{0,1}^n`.

use std::fmt;

use rand::RngCore;

const WORD: usize = 64;

/// A bit string of fixed length packed into 64-bit words.
///
/// Bits past `len` in the last word are always zero, so derived equality and
/// hashing compare exactly the `len` logical bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSolution {
    words: Vec<u64>,
    len: usize,
}

impl BitSolution {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut x = Self {
            words: vec![u64::MAX; len.div_ceil(WORD)],
            len,
        };
        x.clear_tail();
        x
    }

    /// Uniformly random bit string: one `next_u64` per word, low bits first.
    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut x = Self {
            words: (0..len.div_ceil(WORD)).map(|_| rng.next_u64()).collect(),
            len,
        };
        x.clear_tail();
        x
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut x = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                x.set(i, true);
            }
        }
        x
    }

    /// Builds a string from the low `len` bits of `mask` (bit `i` = item `i`).
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_mask supports at most 64 bits");
        let mut x = Self::zeros(len);
        if len > 0 {
            x.words[0] = mask;
            x.clear_tail();
        }
        x
    }

    /// Parses a string of `0`/`1` characters; character `i` is bit `i`.
    pub fn parse(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|ch| match ch {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bools(&b))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Number of one bits, `|x|_1`.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the one bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn hamming(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Hex rendering, most significant digit first, bit 0 as the lowest bit
    /// of the last digit. Always `ceil(len / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let nibble = (self.words[bit / WORD] >> (bit % WORD)) & 0xF;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSolution(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}
