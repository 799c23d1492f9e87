//! Tape symbols: the input alphabet plus the two end-markers.
//!
//! Every realtime run processes `¢ w $`; the end-markers are added by the
//! runner, never by the caller. In the text file format the markers are
//! written `^` and `$`.

use std::fmt;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkedSymbol {
    LeftEnd,
    RightEnd,
    Input(char),
}

impl MarkedSymbol {
    pub fn parse(token: &str) -> Result<Self, Error> {
        match token {
            "^" => Ok(MarkedSymbol::LeftEnd),
            "$" => Ok(MarkedSymbol::RightEnd),
            t => {
                let mut chars = t.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(MarkedSymbol::Input(c)),
                    _ => Err(Error::UnknownSymbol(token.to_string())),
                }
            }
        }
    }
}

impl fmt::Display for MarkedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedSymbol::LeftEnd => write!(f, "^"),
            MarkedSymbol::RightEnd => write!(f, "$"),
            MarkedSymbol::Input(c) => write!(f, "{c}"),
        }
    }
}

/// `¢ w $` as a symbol sequence.
pub fn frame_word(word: &str) -> Vec<MarkedSymbol> {
    let mut tape = Vec::with_capacity(word.chars().count() + 2);
    tape.push(MarkedSymbol::LeftEnd);
    tape.extend(word.chars().map(MarkedSymbol::Input));
    tape.push(MarkedSymbol::RightEnd);
    tape
}

/// Rejects words containing symbols outside `alphabet`.
pub fn check_word(word: &str, alphabet: &std::collections::BTreeSet<char>) -> Result<(), Error> {
    for c in word.chars() {
        if !alphabet.contains(&c) {
            return Err(Error::UnknownSymbol(c.to_string()));
        }
    }
    Ok(())
}
