//! Braid words of B3 and B4 as free words in the Artin generators.
//!
//! Words are never rewritten with braid relations; equality of braids is
//! decided downstream through representations. The canonical form only merges
//! adjacent letters with the same generator index and drops zero powers.

use std::fmt;

use crate::error::{Error, Result};

/// A letter `s_index^power` with `power != 0`.
pub type Letter = (usize, i64);

/// A word in the Artin generators of B_n, n in {3, 4}, stored in canonical
/// form: no zero powers, no two consecutive letters with the same index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Builds a word from raw letters, canonicalizing as it goes.
    pub fn new(strands: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        if strands != 3 && strands != 4 {
            return Err(Error::UnsupportedStrands(strands));
        }
        let mut canonical: Vec<Letter> = Vec::new();
        for (index, power) in letters {
            if index == 0 || index >= strands {
                return Err(Error::IndexOutOfRange {
                    token: format!("s{index}"),
                    strands,
                });
            }
            push_letter(&mut canonical, index, power);
        }
        Ok(BraidWord {
            strands,
            letters: canonical,
        })
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, [])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of single-generator letters, counting multiplicity.
    pub fn letter_weight(&self) -> u64 {
        self.letters.iter().map(|(_, p)| p.unsigned_abs()).sum()
    }

    /// True when the canonical word uses only the generator `s1`
    /// (including the empty word, which is `s1^0`).
    pub fn is_sigma1_power(&self) -> bool {
        self.letters.iter().all(|&(i, _)| i == 1)
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        for &(i, p) in &other.letters {
            push_letter(&mut letters, i, p);
        }
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(i, p)| (i, -p))
                .collect(),
        }
    }

    /// Integer power of a word, with free-group cancellation at the seams.
    pub fn pow(&self, exponent: i64) -> BraidWord {
        let base = if exponent >= 0 {
            self.clone()
        } else {
            self.inverse()
        };
        let mut out = BraidWord {
            strands: self.strands,
            letters: Vec::new(),
        };
        for _ in 0..exponent.unsigned_abs() {
            out = out.concat(&base).expect("same strand count");
        }
        out
    }

    /// Sum of all letter powers; a homomorphism to the integers.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|(_, p)| p).sum()
    }
}

fn push_letter(letters: &mut Vec<Letter>, index: usize, power: i64) {
    if power == 0 {
        return;
    }
    if let Some(last) = letters.last_mut() {
        if last.0 == index {
            last.1 += power;
            if last.1 == 0 {
                letters.pop();
            }
            return;
        }
    }
    letters.push((index, power));
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(i, p) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if p == 1 {
                write!(f, "s{i}")?;
            } else {
                write!(f, "s{i}^{p}")?;
            }
        }
        Ok(())
    }
}

/// Parses the grammar `word := token+`, `token := 's' INT ('^' SIGNED_INT)?`,
/// tokens separated by whitespace.
pub fn parse_word(text: &str, strands: usize) -> Result<BraidWord> {
    if strands != 3 && strands != 4 {
        return Err(Error::UnsupportedStrands(strands));
    }
    let mut letters = Vec::new();
    let mut saw_token = false;
    let mut rest = text;
    let mut offset = 0usize;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let end = trimmed
            .find(char::is_whitespace)
            .unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        letters.push(parse_token(token, offset, strands)?);
        saw_token = true;
        rest = &trimmed[end..];
        offset += end;
    }
    if !saw_token {
        return Err(Error::WordSyntax {
            position: 0,
            message: "empty word: expected at least one token".into(),
        });
    }
    BraidWord::new(strands, letters)
}

fn parse_token(token: &str, position: usize, strands: usize) -> Result<Letter> {
    let body = token.strip_prefix('s').ok_or_else(|| Error::WordSyntax {
        position,
        message: format!("token '{token}' does not start with 's'"),
    })?;
    let (index_str, power_str) = match body.split_once('^') {
        Some((i, p)) => (i, Some(p)),
        None => (body, None),
    };
    let index: usize = index_str
        .parse()
        .ok()
        .filter(|_| !index_str.is_empty() && index_str.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| Error::WordSyntax {
            position,
            message: format!("token '{token}' has a malformed generator index"),
        })?;
    if index == 0 || index >= strands {
        return Err(Error::IndexOutOfRange {
            token: token.to_string(),
            strands,
        });
    }
    let power: i64 = match power_str {
        None => 1,
        Some(p) => p.parse().map_err(|_| Error::WordSyntax {
            position,
            message: format!("token '{token}' has a malformed power"),
        })?,
    };
    Ok((index, power))
}

/// The paper's named words. `a1`, `a2`, `center3` live in B3; `x4`, `y4`,
/// `omega1`, `omega2` live in B4 (the omegas pre-expanded into sigma letters).
pub fn named_word(name: &str, strands: usize) -> Result<BraidWord> {
    let required = match name {
        "a1" | "a2" | "center3" => 3,
        "x4" | "y4" | "omega1" | "omega2" => 4,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    if strands != required {
        return Err(Error::WrongStrands {
            name: name.to_string(),
            required,
            given: strands,
        });
    }
    match name {
        "a1" => BraidWord::new(3, [(1, -1), (2, 1)]),
        "a2" => BraidWord::new(3, [(2, 1), (1, -1)]),
        "center3" => {
            let half = BraidWord::new(3, [(1, 1), (2, 1)])?;
            Ok(half.pow(3))
        }
        "x4" => BraidWord::new(4, [(1, 1), (3, -1)]),
        "y4" => BraidWord::new(4, [(2, 1), (1, 1), (3, -1), (2, -1)]),
        "omega1" => xy_word(&[
            ('x', -1),
            ('y', 2),
            ('x', -1),
            ('y', 1),
            ('x', 1),
            ('y', 1),
            ('x', 2),
            ('y', -2),
            ('x', -1),
            ('y', -3),
        ]),
        "omega2" => xy_word(&[
            ('y', -1),
            ('x', 1),
            ('y', -2),
            ('x', 1),
            ('y', -1),
            ('x', -1),
            ('y', -1),
            ('x', -2),
            ('y', 2),
            ('x', 1),
            ('y', 2),
        ]),
        _ => unreachable!(),
    }
}

fn xy_word(spec: &[(char, i64)]) -> Result<BraidWord> {
    let x = named_word("x4", 4)?;
    let y = named_word("y4", 4)?;
    let mut out = BraidWord::empty(4)?;
    for &(g, p) in spec {
        let base = if g == 'x' { &x } else { &y };
        out = out.concat(&base.pow(p))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_words() {
        let w = parse_word("s1 s2^-1", 3).unwrap();
        assert_eq!(w.letters(), &[(1, 1), (2, -1)]);
        let w = parse_word("s2^-2 s1 s2^-1", 3).unwrap();
        assert_eq!(w.letters(), &[(2, -2), (1, 1), (2, -1)]);
    }

    #[test]
    fn rejects_out_of_range_index() {
        match parse_word("s3", 3) {
            Err(Error::IndexOutOfRange { token, strands }) => {
                assert_eq!(token, "s3");
                assert_eq!(strands, 3);
            }
            other => panic!("expected index error, got {other:?}"),
        }
        assert!(parse_word("s3", 4).is_ok());
    }

    #[test]
    fn rejects_malformed_tokens() {
        assert!(matches!(
            parse_word("t1", 3),
            Err(Error::WordSyntax { .. })
        ));
        assert!(matches!(
            parse_word("s1^x", 3),
            Err(Error::WordSyntax { .. })
        ));
        assert!(matches!(parse_word("  ", 3), Err(Error::WordSyntax { .. })));
        // position points at the offending token
        match parse_word("s1 zz", 3) {
            Err(Error::WordSyntax { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn merges_adjacent_letters() {
        let w = parse_word("s2 s2 s1 s1^-1 s2^3", 3).unwrap();
        assert_eq!(w.letters(), &[(2, 5)]);
        let zero = parse_word("s1^0 s2", 3).unwrap();
        assert_eq!(zero.letters(), &[(2, 1)]);
    }

    #[test]
    fn concat_inverse_cancel() {
        let w = parse_word("s2^-2 s1 s2^-1", 3).unwrap();
        assert!(w.concat(&w.inverse()).unwrap().is_empty());
        let v = BraidWord::new(3, [(1, 2)]).unwrap();
        assert_eq!(v.inverse().letters(), &[(1, -2)]);
    }

    #[test]
    fn exponent_sums() {
        let w = parse_word("s2^-2 s1 s2^-1", 3).unwrap();
        assert_eq!(w.exponent_sum(), -2);
        assert_eq!(named_word("omega1", 4).unwrap().exponent_sum(), 0);
        assert_eq!(named_word("omega2", 4).unwrap().exponent_sum(), 0);
    }

    #[test]
    fn named_words() {
        assert_eq!(named_word("a1", 3).unwrap().letters(), &[(1, -1), (2, 1)]);
        assert_eq!(named_word("a2", 3).unwrap().letters(), &[(2, 1), (1, -1)]);
        let c = named_word("center3", 3).unwrap();
        assert_eq!(
            c.letters(),
            &[(1, 1), (2, 1), (1, 1), (2, 1), (1, 1), (2, 1)]
        );
        assert!(matches!(
            named_word("a1", 4),
            Err(Error::WrongStrands { .. })
        ));
        assert!(matches!(named_word("nope", 3), Err(Error::UnknownName(_))));
    }

    #[test]
    fn print_parse_round_trip() {
        let w = parse_word("s2^-2 s1 s2^-1 s1^3", 3).unwrap();
        let text = w.to_string();
        assert_eq!(parse_word(&text, 3).unwrap(), w);
    }

    #[test]
    fn sigma1_power_detection() {
        assert!(parse_word("s1^5", 3).unwrap().is_sigma1_power());
        assert!(BraidWord::empty(3).unwrap().is_sigma1_power());
        assert!(!parse_word("s1 s2", 3).unwrap().is_sigma1_power());
    }
}
