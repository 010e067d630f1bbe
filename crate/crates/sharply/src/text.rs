//! Parsing of words, points, and pairs from command-line text.
//!
//! Words are whitespace-separated tokens: `g<n>` for a base-group element
//! by id, `s<n>`/`r<n>` for generators, `S<n>`/`R<n>` for their inverses,
//! and `e` for nothing at all (accepted so the printed form of the empty
//! word parses back). Points are `b<n>` or `o<orbit>.<g>`; pairs are two
//! points joined by a comma. Indices are plain decimal digits — no signs,
//! no whitespace inside a token.

use crate::action::Point;
use crate::word::{Letter, Word};
use thiserror::Error;

/// Text that does not denote a word, point, or pair.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unrecognized word token `{token}`; expected g<n>, s<n>, S<n>, r<n>, R<n>, or e")]
    BadToken { token: String },
    #[error("unrecognized point `{text}`; expected b<n> or o<orbit>.<g>")]
    BadPoint { text: String },
    #[error("expected a pair `<point>,<point>`, got `{text}`")]
    BadPair { text: String },
}

fn parse_index(digits: &str) -> Option<u32> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses a whitespace-separated word.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        if token == "e" {
            continue;
        }
        let bad = || ParseError::BadToken {
            token: token.to_string(),
        };
        let mut chars = token.chars();
        let head = chars.next().ok_or_else(bad)?;
        let index = parse_index(chars.as_str()).ok_or_else(bad)?;
        let letter = match head {
            'g' => Letter::Base(u16::try_from(index).map_err(|_| bad())?),
            's' => Letter::s(index),
            'S' => Letter::s_inv(index),
            'r' => Letter::r(index),
            'R' => Letter::r_inv(index),
            _ => return Err(bad()),
        };
        letters.push(letter);
    }
    Ok(Word(letters))
}

/// Parses a point written as `b<n>` or `o<orbit>.<g>`.
pub fn parse_point(text: &str) -> Result<Point, ParseError> {
    let bad = || ParseError::BadPoint {
        text: text.to_string(),
    };
    let mut chars = text.chars();
    match chars.next() {
        Some('b') => parse_index(chars.as_str())
            .map(Point::Base)
            .ok_or_else(bad),
        Some('o') => {
            let (orbit, g) = chars.as_str().split_once('.').ok_or_else(bad)?;
            let orbit = parse_index(orbit).ok_or_else(bad)?;
            let g = parse_index(g)
                .and_then(|v| u16::try_from(v).ok())
                .ok_or_else(bad)?;
            Ok(Point::Orbit { orbit, g })
        }
        _ => Err(bad()),
    }
}

/// Parses `<point>,<point>`, tolerating spaces around the comma.
pub fn parse_pair(text: &str) -> Result<(Point, Point), ParseError> {
    let (a, b) = text.split_once(',').ok_or_else(|| ParseError::BadPair {
        text: text.to_string(),
    })?;
    Ok((parse_point(a.trim())?, parse_point(b.trim())?))
}
