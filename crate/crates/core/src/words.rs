//! Pair-of-words construction: `X_ij` counts positions where `u` reads letter
//! `i` and `v` reads letter `j`. For independent uniform words of length `m`
//! over `n` letters the result is distributed as `M(m, n²)`.

use crate::error::{Error, Result};
use crate::lap;
use crate::matrix::CountMatrix;

/// Letters are 1-based, in `[1..n]`.
pub fn matrix_from_words(u: &[usize], v: &[usize], n: usize) -> Result<CountMatrix> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    for (word, _) in [(u, 'u'), (v, 'v')] {
        if let Some((position, &letter)) = word.iter().enumerate().find(|&(_, &l)| l == 0 || l > n)
        {
            return Err(Error::LetterOutOfRange {
                letter,
                position,
                alphabet: n,
            });
        }
    }
    CountMatrix::from_cells(n, u.iter().zip(v).map(|(&a, &b)| (a - 1, b - 1, 1)))
}

/// Smallest Hamming distance between `v` and any letter-wise recoding of `u`:
/// `m − max_σ Σ X_{iσ(i)}`.
pub fn min_coded_hamming(u: &[usize], v: &[usize], n: usize) -> Result<u64> {
    let x = matrix_from_words(u, v, n)?;
    let best = lap::solve(&x, lap::Objective::Max)?;
    Ok(x.total() - best.value)
}

/// Parses a word given either as comma-separated 1-based letter indices
/// (`"1,2,2,3"`) or as lowercase ASCII letters (`"abbc"`, `a` = 1).
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') || s.bytes().all(|b| b.is_ascii_digit()) {
        return s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidMatrix(format!("bad letter {t:?}: {e}")))
            })
            .collect();
    }
    s.chars()
        .map(|c| {
            if c.is_ascii_lowercase() {
                Ok((c as u8 - b'a') as usize + 1)
            } else {
                Err(Error::InvalidMatrix(format!("bad letter {c:?}")))
            }
        })
        .collect()
}
