//! Brute-force reference deciders.
//!
//! These are deliberately naive transcriptions of the language and promise
//! problem definitions, sharing no code with the simulator; when an
//! exhaustive sweep finds them agreeing with a machine, that agreement is
//! evidence rather than tautology.

use crate::error::Error;

/// Label of a word relative to a promise problem. Machines make no claims
/// about unpromised inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PromiseLabel {
    Yes,
    No,
    Unpromised,
}

/// END: the word contains at least one 2 and, reading from the right, the
/// symbol at position `|w|_2` (1-based) is a 1.
pub fn in_end(word: &str) -> Result<bool, Error> {
    for c in word.chars() {
        if !matches!(c, '0' | '1' | '2') {
            return Err(Error::UnknownSymbol(c.to_string()));
        }
    }
    let twos = word.chars().filter(|&c| c == '2').count();
    if twos == 0 {
        return Ok(false);
    }
    let reversed: Vec<char> = word.chars().rev().collect();
    Ok(reversed[twos - 1] == '1')
}

/// PAL: palindromes over {1,2}.
pub fn in_pal(word: &str) -> Result<bool, Error> {
    for c in word.chars() {
        if !matches!(c, '1' | '2') {
            return Err(Error::UnknownSymbol(c.to_string()));
        }
    }
    let forward: Vec<char> = word.chars().collect();
    let mut backward = forward.clone();
    backward.reverse();
    Ok(forward == backward)
}

/// PAL-NPAL: promised words are `x0y` with exactly one 0 and `x, y` over
/// {1,2}; yes-instances have `x` a palindrome and `y` not, no-instances the
/// mirror image. Everything else (including both-palindrome and
/// neither-palindrome splits) is unpromised.
pub fn classify_pal_npal(word: &str) -> PromiseLabel {
    if word.chars().filter(|&c| c == '0').count() != 1 {
        return PromiseLabel::Unpromised;
    }
    let (x, y) = word.split_once('0').expect("exactly one 0");
    let (Ok(x_pal), Ok(y_pal)) = (in_pal(x), in_pal(y)) else {
        return PromiseLabel::Unpromised;
    };
    match (x_pal, y_pal) {
        (true, false) => PromiseLabel::Yes,
        (false, true) => PromiseLabel::No,
        _ => PromiseLabel::Unpromised,
    }
}

/// TWIN(t): `w_1 0 w_2 0 ... 0 w_t 3 w_t 0 ... 0 w_2 0 w_1` with each block
/// over {1,2}.
pub fn in_twin_t(word: &str, t: usize) -> Result<bool, Error> {
    if t < 1 {
        return Err(Error::Precondition("t must be at least 1".to_string()));
    }
    if word.chars().filter(|&c| c == '3').count() != 1 {
        return Ok(false);
    }
    let (left, right) = word.split_once('3').expect("exactly one 3");
    let left_blocks: Vec<&str> = left.split('0').collect();
    let right_blocks: Vec<&str> = right.split('0').collect();
    if left_blocks.len() != t || right_blocks.len() != t {
        return Ok(false);
    }
    for block in left_blocks.iter().chain(&right_blocks) {
        if block.chars().any(|c| !matches!(c, '1' | '2')) {
            return Ok(false);
        }
    }
    Ok(left_blocks
        .iter()
        .zip(right_blocks.iter().rev())
        .all(|(a, b)| a == b))
}

/// MANYTWINS: the union of TWIN(t) over all t >= 1. Checked by trying every
/// t that could structurally fit.
pub fn in_manytwins(word: &str) -> bool {
    let max_t = word.chars().count() / 2 + 1;
    (1..=max_t).any(|t| in_twin_t(word, t).unwrap_or(false))
}

/// All words over `alphabet` of length at most `max_len`, shortest first and
/// lexicographic within a length (in the order the alphabet is given).
pub fn enumerate_words(alphabet: &[char], max_len: usize) -> impl Iterator<Item = String> + '_ {
    (0..=max_len).flat_map(move |len| WordsOfLength::new(alphabet, len))
}

struct WordsOfLength<'a> {
    alphabet: &'a [char],
    // digit indices of the next word, most significant first; None when done
    digits: Option<Vec<usize>>,
}

impl<'a> WordsOfLength<'a> {
    fn new(alphabet: &'a [char], len: usize) -> Self {
        let digits = if alphabet.is_empty() && len > 0 {
            None
        } else {
            Some(vec![0; len])
        };
        WordsOfLength { alphabet, digits }
    }
}

impl Iterator for WordsOfLength<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        let digits = self.digits.as_mut()?;
        let word: String = digits.iter().map(|&d| self.alphabet[d]).collect();
        // odometer increment
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                self.digits = None;
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < self.alphabet.len() {
                break;
            }
            digits[pos] = 0;
        }
        Some(word)
    }
}
