//! Tokenising of the bracketed group notation shared by `.cog` and `.srs`.

use crate::error::{CogError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> CogError {
    CogError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Strips a `#` comment, returning the part of the line before it.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits a line fragment into whitespace separated tokens, 1-based columns.
pub(crate) fn tokens(fragment: &str, line: usize, column_offset: usize) -> Vec<Token> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<char> = fragment.chars().collect();
    for (i, ch) in chars
        .iter()
        .enumerate()
        .chain(std::iter::once((chars.len(), &' ')))
    {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: chars[s..i].iter().collect(),
                    line,
                    column: column_offset + s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

type Located = (char, usize, usize);

/// Parses groups delimited by `open` and `close` over the given numbered lines.
///
/// A group whose content has no whitespace is read one character per label,
/// so `(1323)` and `(1 3 2 3)` are the same group.
pub(crate) fn parse_groups(
    lines: &[(usize, String)],
    open: char,
    close: char,
) -> Result<Vec<Vec<Token>>> {
    let mut groups = Vec::new();
    // characters with positions, plus the position of the opening bracket
    let mut current: Option<(Vec<Located>, usize, usize)> = None;
    for (line_no, text) in lines {
        for (col0, ch) in text.chars().enumerate() {
            let col = col0 + 1;
            if ch == open {
                if current.is_some() {
                    return Err(parse_error(*line_no, col, format!("nested '{open}'")));
                }
                current = Some((Vec::new(), *line_no, col));
            } else if ch == close {
                match current.take() {
                    None => return Err(parse_error(*line_no, col, format!("unmatched '{close}'"))),
                    Some((content, _, _)) => groups.push(group_tokens(&content)),
                }
            } else if let Some((content, _, _)) = current.as_mut() {
                content.push((ch, *line_no, col));
            } else if !ch.is_whitespace() {
                return Err(parse_error(
                    *line_no,
                    col,
                    format!("unexpected character '{ch}' outside a group"),
                ));
            }
        }
        if let Some((content, _, _)) = current.as_mut() {
            content.push(('\n', *line_no, text.chars().count() + 1));
        }
    }
    if let Some((_, line, col)) = current {
        return Err(parse_error(line, col, format!("unclosed '{open}'")));
    }
    Ok(groups)
}

fn group_tokens(content: &[(char, usize, usize)]) -> Vec<Token> {
    let Some(start) = content.iter().position(|c| !c.0.is_whitespace()) else {
        return Vec::new();
    };
    let end = content.iter().rposition(|c| !c.0.is_whitespace()).unwrap() + 1;
    let trimmed = &content[start..end];
    let spaced = trimmed.iter().any(|c| c.0.is_whitespace());
    if !spaced {
        return trimmed
            .iter()
            .map(|c| Token {
                text: c.0.to_string(),
                line: c.1,
                column: c.2,
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut word: Option<Token> = None;
    for c in trimmed {
        if c.0.is_whitespace() {
            if let Some(w) = word.take() {
                out.push(w);
            }
        } else {
            match word.as_mut() {
                Some(w) => w.text.push(c.0),
                None => {
                    word = Some(Token {
                        text: c.0.to_string(),
                        line: c.1,
                        column: c.2,
                    })
                }
            }
        }
    }
    out.extend(word);
    out
}

/// Numbers labels so that edge index order is ascending label order
/// (numeric when every label is an integer), checking each occurs twice.
pub(crate) fn index_labels(groups: &[Vec<Token>]) -> Result<(Vec<Vec<usize>>, Vec<String>)> {
    let mut first_seen: Vec<(String, usize, usize, usize)> = Vec::new();
    for tok in groups.iter().flatten() {
        match first_seen.iter_mut().find(|f| f.0 == tok.text) {
            Some(f) => f.3 += 1,
            None => first_seen.push((tok.text.clone(), tok.line, tok.column, 1)),
        }
    }
    for (label, line, col, count) in &first_seen {
        if *count != 2 {
            return Err(parse_error(
                *line,
                *col,
                format!("label {label} occurs {count} time(s), expected 2"),
            ));
        }
    }
    let mut labels: Vec<String> = first_seen.into_iter().map(|f| f.0).collect();
    sort_labels(&mut labels);
    let seqs = groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|t| labels.iter().position(|l| *l == t.text).unwrap())
                .collect()
        })
        .collect();
    Ok((seqs, labels))
}

pub(crate) fn sort_labels(labels: &mut [String]) {
    if labels.iter().all(|l| l.parse::<u64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<u64>().unwrap());
    } else {
        labels.sort();
    }
}

pub(crate) fn numbered_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).to_string()))
        .collect()
}
