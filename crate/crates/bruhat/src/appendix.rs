//! Parsing and emission of interval lists in reduced-word pair
//! notation: `(s_1s_2, s_1s_2s_1), ...`.
//!
//! Both `s_1s_2` and `s1 s2` token styles are accepted, as are bare
//! digit lists like `1 2 1`. For family B the generator labeling of the
//! source text is resolved empirically: the diagram has two possible
//! numberings (the sign-flip generator at index 1 or at index `rank`),
//! and the one under which every listed word is reduced is selected.

use std::fmt::Write as _;

use thiserror::Error;

use crate::group::{Element, Family, Group, GroupError, Word};
use crate::order::{interval, leq, Interval, OrderError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed token at byte {at}: {context}")]
    MalformedToken { at: usize, context: String },
    #[error("unbalanced parentheses in pair list")]
    UnbalancedPair,
    #[error("pair {index} does not have exactly two words")]
    PairArity { index: usize },
    #[error("no generator letters found")]
    Empty,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("word {index} is not reduced under any generator labeling")]
    NotReduced { index: usize },
    #[error("pair {index}: first word is not below the second in Bruhat order")]
    NotBelow { index: usize },
}

/// How source generator indices map onto this crate's realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorLabeling {
    /// Source `s_i` is this crate's `s_i`.
    Identity,
    /// Source `s_i` is this crate's `s_(rank + 1 - i)`.
    Reversed,
}

impl GeneratorLabeling {
    fn apply(&self, letter: usize, rank: usize) -> u8 {
        match self {
            GeneratorLabeling::Identity => letter as u8,
            GeneratorLabeling::Reversed => (rank + 1 - letter) as u8,
        }
    }
}

/// One interval denoted by reduced words for its endpoints, with the
/// letters already in this crate's generator numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSpec {
    pub group: Group,
    pub u_word: Word,
    pub v_word: Word,
}

impl IntervalSpec {
    pub fn bottom(&self) -> Element {
        self.group.evaluate_word(&self.u_word).expect("validated word")
    }

    pub fn top(&self) -> Element {
        self.group.evaluate_word(&self.v_word).expect("validated word")
    }

    pub fn interval(&self) -> Result<Interval, OrderError> {
        interval(&self.bottom(), &self.top())
    }

    pub fn length(&self) -> usize {
        self.v_word.len() - self.u_word.len()
    }
}

/// A parsed list of interval specifications.
#[derive(Debug)]
pub struct AppendixFile {
    pub group: Group,
    pub labeling: GeneratorLabeling,
    pub specs: Vec<IntervalSpec>,
}

impl AppendixFile {
    /// Renders the list back in the source notation, one pair per line,
    /// undoing any generator relabeling.
    pub fn emit(&self) -> String {
        let rank = self.group.rank();
        let mut out = String::new();
        for (i, spec) in self.specs.iter().enumerate() {
            if i > 0 {
                out.push_str(",\n ");
            }
            out.push('(');
            emit_word(&mut out, &spec.u_word, self.labeling, rank);
            out.push_str(", ");
            emit_word(&mut out, &spec.v_word, self.labeling, rank);
            out.push(')');
        }
        out
    }
}

fn emit_word(out: &mut String, word: &Word, labeling: GeneratorLabeling, rank: usize) {
    for &l in word.letters() {
        let src = match labeling {
            GeneratorLabeling::Identity => l as usize,
            GeneratorLabeling::Reversed => rank + 1 - l as usize,
        };
        let _ = write!(out, "s_{}", src);
    }
}

/// Formats a word in this crate's numbering, `e` for the identity.
pub fn format_word(word: &Word) -> String {
    word.to_string()
}

/// Raw 1-based generator indices from one word's text. Accepts `s_1`,
/// `s1`, and bare digit tokens; whitespace and commas are ignored.
pub fn parse_letters(text: &str) -> Result<Vec<usize>, ParseError> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() || c == ',' || c == '{' || c == '}' || c == '$' || c == '\\' {
            i += 1;
            continue;
        }
        if c == 's' || c == 'S' {
            i += 1;
            if i < bytes.len() && bytes[i] == b'_' {
                i += 1;
            }
            while i < bytes.len() && bytes[i] == b'{' {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(ParseError::MalformedToken {
                    at: start,
                    context: "generator token without an index".into(),
                });
            }
            letters.push(text[start..i].parse().unwrap());
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            letters.push(text[start..i].parse().unwrap());
            continue;
        }
        if c == 'e' && letters.is_empty() && text.trim() == "e" {
            return Ok(Vec::new());
        }
        return Err(ParseError::MalformedToken {
            at: i,
            context: format!("unexpected character {c:?}"),
        });
    }
    Ok(letters)
}

/// Parses one word into the group, applying the labeling.
pub fn parse_word_in(
    group: Group,
    text: &str,
    labeling: GeneratorLabeling,
) -> Result<Word, ParseError> {
    let letters = parse_letters(text)?;
    let rank = group.rank();
    for &l in &letters {
        if l == 0 || l > rank {
            return Err(GroupError::LetterOutOfRange { letter: l, rank }.into());
        }
    }
    Ok(Word(
        letters.iter().map(|&l| labeling.apply(l, rank)).collect(),
    ))
}

/// Splits the text into parenthesized `(u, v)` pairs of word strings.
fn split_pairs(text: &str) -> Result<Vec<(String, String)>, ParseError> {
    let mut pairs = Vec::new();
    let mut chars = text.char_indices();
    while let Some((_, c)) = chars.next() {
        if c != '(' {
            continue;
        }
        let mut words = vec![String::new()];
        let mut closed = false;
        for (_, c) in chars.by_ref() {
            match c {
                ')' => {
                    closed = true;
                    break;
                }
                '(' => return Err(ParseError::UnbalancedPair),
                ',' => words.push(String::new()),
                _ => words.last_mut().unwrap().push(c),
            }
        }
        if !closed {
            return Err(ParseError::UnbalancedPair);
        }
        if words.len() != 2 {
            return Err(ParseError::PairArity { index: pairs.len() });
        }
        pairs.push((words[0].clone(), words[1].clone()));
    }
    Ok(pairs)
}

/// Parses a pair list for the given family.
///
/// The rank is the largest generator index appearing anywhere in the
/// text. Every word must be reduced and every pair must satisfy
/// `u <= v`; for family B both diagram labelings are tried and the one
/// under which all words are reduced is kept.
pub fn parse_appendix(text: &str, family: Family) -> Result<AppendixFile, ParseError> {
    let raw = split_pairs(text)?;
    if raw.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut letter_pairs = Vec::with_capacity(raw.len());
    let mut rank = 0;
    for (u_text, v_text) in &raw {
        let u = parse_letters(u_text)?;
        let v = parse_letters(v_text)?;
        rank = rank
            .max(u.iter().copied().max().unwrap_or(0))
            .max(v.iter().copied().max().unwrap_or(0));
        letter_pairs.push((u, v));
    }
    if rank == 0 {
        return Err(ParseError::Empty);
    }
    let group = Group::new(family, rank)?;

    let labelings: &[GeneratorLabeling] = match family {
        // relabeling is a group automorphism in type A, so reducedness
        // cannot distinguish the two numberings; the identity is used
        Family::A => &[GeneratorLabeling::Identity],
        Family::B => &[GeneratorLabeling::Identity, GeneratorLabeling::Reversed],
    };
    let mut chosen = None;
    let mut first_failure = 0;
    'labelings: for &labeling in labelings {
        for (index, (u, v)) in letter_pairs.iter().enumerate() {
            for letters in [u, v] {
                let word = Word(letters.iter().map(|&l| labeling.apply(l, rank)).collect());
                let x = group.evaluate_word(&word)?;
                if x.length() != word.len() {
                    first_failure = index;
                    continue 'labelings;
                }
            }
        }
        chosen = Some(labeling);
        break;
    }
    let Some(labeling) = chosen else {
        return Err(ParseError::NotReduced {
            index: first_failure,
        });
    };

    let mut specs = Vec::with_capacity(letter_pairs.len());
    for (index, (u, v)) in letter_pairs.iter().enumerate() {
        let u_word = Word(u.iter().map(|&l| labeling.apply(l, rank)).collect());
        let v_word = Word(v.iter().map(|&l| labeling.apply(l, rank)).collect());
        let bottom = group.evaluate_word(&u_word)?;
        let top = group.evaluate_word(&v_word)?;
        if !leq(&bottom, &top) {
            return Err(ParseError::NotBelow { index });
        }
        specs.push(IntervalSpec {
            group,
            u_word,
            v_word,
        });
    }
    Ok(AppendixFile {
        group,
        labeling,
        specs,
    })
}
