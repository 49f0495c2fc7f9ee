//! The line-oriented instance format.
//!
//! ```text
//! candidates: a b c
//! X: a c b
//! k: 3
//! budget: 1
//! ranking-costs: 1 1      # optional, aligned with the R lines
//! candidate-costs: a=2    # optional, unlisted candidates cost 1
//! R: a b c
//! R: c a                  # partial rankings omit candidates
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Labels are any
//! non-whitespace text without `=` or `:`.

use std::collections::HashSet;

use kemeny_core::{CandidateId, Candidates, ManipulationInstance, Profile, Ranking};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("line {line}: {constraint}")]
    Semantic { line: usize, constraint: String },
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    key: &'a str,
    key_column: usize,
    values: Vec<Token<'a>>,
}

fn tokens(text: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &text[s..i],
                    column: offset + text[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &text[s..],
            column: offset + text[..s].chars().count() + 1,
        });
    }
    out
}

fn split_lines(text: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let first = tokens(content, 0)[0];
            return Err(ParseError::Syntax {
                line: number,
                column: first.column,
                expected: "`key: values`".into(),
            });
        };
        let head = &content[..colon];
        let key = head.trim();
        let key_column = head.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let values_offset = content[..colon + 1].chars().count();
        lines.push(Line {
            number,
            key,
            key_column,
            values: tokens(&content[colon + 1..], values_offset),
        });
    }
    Ok(lines)
}

fn syntax(line: usize, column: usize, expected: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        expected: expected.into(),
    }
}

fn semantic(line: usize, constraint: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line,
        constraint: constraint.into(),
    }
}

fn number(line: usize, tok: Token<'_>) -> Result<u64, ParseError> {
    if tok.text.starts_with('-') && tok.text[1..].chars().all(|c| c.is_ascii_digit()) {
        return Err(semantic(
            line,
            format!("negative number `{}` is not allowed", tok.text),
        ));
    }
    tok.text
        .parse()
        .map_err(|_| syntax(line, tok.column, "a non-negative integer"))
}

fn single<'a>(line: &Line<'a>) -> Result<Token<'a>, ParseError> {
    match line.values.as_slice() {
        [tok] => Ok(*tok),
        [] => Err(syntax(line.number, line.key_column + line.key.len() + 1, "a value")),
        [_, extra, ..] => Err(syntax(line.number, extra.column, "end of line")),
    }
}

fn ranking(line: &Line<'_>, cands: &Candidates) -> Result<Ranking, ParseError> {
    let mut order: Vec<CandidateId> = Vec::with_capacity(line.values.len());
    let mut seen = HashSet::new();
    for tok in &line.values {
        let id = cands.id(tok.text).ok_or_else(|| {
            semantic(line.number, format!("unknown candidate `{}`", tok.text))
        })?;
        if !seen.insert(id) {
            return Err(semantic(
                line.number,
                format!("duplicate candidate `{}`", tok.text),
            ));
        }
        order.push(id);
    }
    Ok(Ranking::new(order).expect("duplicates rejected above"))
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<ManipulationInstance, ParseError> {
    let lines = split_lines(text)?;

    let mut seen_keys: HashSet<&str> = HashSet::new();
    for line in &lines {
        match line.key {
            "candidates" | "X" | "k" | "budget" | "ranking-costs" | "candidate-costs" => {
                if !seen_keys.insert(line.key) {
                    return Err(semantic(line.number, format!("`{}` given twice", line.key)));
                }
            }
            "R" => {}
            other => {
                return Err(syntax(
                    line.number,
                    line.key_column,
                    format!(
                        "one of candidates, X, k, budget, ranking-costs, candidate-costs, R (found `{other}`)"
                    ),
                ))
            }
        }
    }
    let find = |key: &str| lines.iter().find(|l| l.key == key);
    let last_line = lines.last().map_or(1, |l| l.number);

    let cand_line =
        find("candidates").ok_or_else(|| semantic(last_line, "missing `candidates:` line"))?;
    let mut labels = Vec::with_capacity(cand_line.values.len());
    let mut seen = HashSet::new();
    for tok in &cand_line.values {
        if tok.text.contains('=') {
            return Err(syntax(cand_line.number, tok.column, "a label without `=`"));
        }
        if !seen.insert(tok.text) {
            return Err(semantic(
                cand_line.number,
                format!("duplicate candidate `{}`", tok.text),
            ));
        }
        labels.push(tok.text);
    }
    let cands = Candidates::new(labels).map_err(|e| semantic(cand_line.number, e.to_string()))?;
    let m = cands.len();

    let x_line = find("X").ok_or_else(|| semantic(last_line, "missing `X:` line"))?;
    let target = ranking(x_line, &cands)?;
    if target.len() != m {
        return Err(semantic(
            x_line.number,
            format!("X ranks {} of {m} candidates", target.len()),
        ));
    }

    let k = find("k").map(|l| single(l).and_then(|t| number(l.number, t))).transpose()?;
    let budget = find("budget")
        .map(|l| single(l).and_then(|t| number(l.number, t)))
        .transpose()?;

    let rankings = lines
        .iter()
        .filter(|l| l.key == "R")
        .map(|l| ranking(l, &cands))
        .collect::<Result<Vec<_>, _>>()?;
    let n = rankings.len();

    let ranking_costs = match find("ranking-costs") {
        None => vec![1; n],
        Some(line) => {
            let costs = line
                .values
                .iter()
                .map(|&t| number(line.number, t))
                .collect::<Result<Vec<_>, _>>()?;
            if costs.len() != n {
                return Err(semantic(
                    line.number,
                    format!("{} ranking costs for {n} `R:` lines", costs.len()),
                ));
            }
            costs
        }
    };

    let mut candidate_costs = vec![1; m];
    if let Some(line) = find("candidate-costs") {
        let mut given = HashSet::new();
        for tok in &line.values {
            let Some((label, value)) = tok.text.split_once('=') else {
                return Err(syntax(line.number, tok.column, "`label=cost`"));
            };
            let id = cands
                .id(label)
                .ok_or_else(|| semantic(line.number, format!("unknown candidate `{label}`")))?;
            if !given.insert(id) {
                return Err(semantic(
                    line.number,
                    format!("cost for `{label}` given twice"),
                ));
            }
            let value_tok = Token {
                text: value,
                column: tok.column + label.chars().count() + 1,
            };
            candidate_costs[id] = number(line.number, value_tok)?;
        }
    }

    ManipulationInstance::new(
        cands,
        Profile::new(rankings),
        target,
        ranking_costs,
        candidate_costs,
        budget.unwrap_or(0),
        k.unwrap_or(0),
    )
    .map_err(|e| semantic(last_line, e.to_string()))
}

/// Canonical text form; [`parse_instance`] reads it back to an equal
/// instance.
pub fn render(instance: &ManipulationInstance) -> String {
    let cands = &instance.candidates;
    let mut out = String::new();
    out.push_str(&format!("candidates: {}\n", cands.labels().join(" ")));
    out.push_str(&format!("X: {}\n", cands.display(&instance.target)));
    out.push_str(&format!("k: {}\n", instance.k));
    out.push_str(&format!("budget: {}\n", instance.budget));
    let rc: Vec<String> = instance.ranking_costs.iter().map(u64::to_string).collect();
    out.push_str(&format!("ranking-costs: {}\n", rc.join(" ")).replace(": \n", ":\n"));
    let cc: Vec<String> = instance
        .candidate_costs
        .iter()
        .enumerate()
        .map(|(c, cost)| format!("{}={cost}", cands.label(c)))
        .collect();
    out.push_str(&format!("candidate-costs: {}\n", cc.join(" ")).replace(": \n", ":\n"));
    for r in instance.profile.iter() {
        out.push_str(&format!("R: {}\n", cands.display(r)).replace(": \n", ":\n"));
    }
    out
}
