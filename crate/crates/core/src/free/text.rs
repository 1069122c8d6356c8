//! Text form of linear combinations of words.
//!
//! Terms are separated by ` + ` or ` - `; a term is an optional coefficient
//! (a parenthesized scalar, or a plain rational, followed by `*`) and then
//! whitespace-separated generator names. `1` is the empty word.

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Ctx, Scalar};
use crate::word::Word;
use crate::comb::Comb;

pub(crate) fn render_comb<'a>(terms: impl Iterator<Item = (String, bool, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (label, unit, c) in terms {
        let minus_one = (-c).is_one();
        let body = if c.is_one() || minus_one {
            label
        } else if unit {
            format!("({c})")
        } else {
            format!("({c})*{label}")
        };
        match (out.is_empty(), minus_one) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn tokenize(input: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in input.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced `)` in `{input}`")));
                }
            }
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `(` in `{input}`")));
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    Ok(tokens)
}

fn is_plain_number(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/')
}

pub(crate) fn parse_comb(
    ctx: &Ctx,
    input: &str,
    mut word: impl FnMut(&[&str]) -> Result<Word>,
) -> Result<Comb<Word>> {
    let tokens = tokenize(input)?;
    if tokens.len() == 1 && tokens[0] == "0" {
        return Ok(Comb::zero());
    }
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut groups: Vec<(bool, Vec<String>)> = Vec::new();
    let mut negative = false;
    let mut cur: Vec<String> = Vec::new();
    for t in tokens {
        if t == "+" || t == "-" {
            if cur.is_empty() {
                if groups.is_empty() && t == "-" && !negative {
                    negative = true;
                    continue;
                }
                return Err(Error::Parse(format!("dangling `{t}` in `{input}`")));
            }
            groups.push((negative, std::mem::take(&mut cur)));
            negative = t == "-";
            continue;
        }
        if cur.is_empty() && groups.is_empty() && !negative && t.len() > 1 && t.starts_with('-') {
            negative = true;
            cur.push(t[1..].to_string());
        } else {
            cur.push(t);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("expression ends with an operator: `{input}`")));
    }
    groups.push((negative, cur));

    let mut out = Comb::zero();
    for (neg, toks) in groups {
        let (coeff, names) = split_coefficient(ctx, &toks)?;
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let w = match names.as_slice() {
            [] | ["1"] => Word::empty(),
            _ => word(&names)?,
        };
        let c = if neg { -&coeff } else { coeff };
        out.add_term(w, c);
    }
    Ok(out)
}

fn split_coefficient(ctx: &Ctx, toks: &[String]) -> Result<(Scalar, Vec<String>)> {
    let first = &toks[0];
    let rest = toks[1..].to_vec();
    if first.starts_with('(') {
        let close = matching_paren(first)?;
        let inner = &first[1..close];
        let c = parse_scalar(ctx, inner)?;
        let tail = &first[close + 1..];
        let mut names = Vec::new();
        if let Some(n) = tail.strip_prefix('*') {
            if !n.is_empty() {
                names.push(n.to_string());
            }
        } else if !tail.is_empty() {
            return Err(Error::Parse(format!("expected `*` after coefficient in `{first}`")));
        }
        names.extend(rest);
        return Ok((c, names));
    }
    if let Some((pre, post)) = first.split_once('*') {
        if is_plain_number(pre) {
            let c = parse_scalar(ctx, pre)?;
            let mut names = Vec::new();
            if !post.is_empty() {
                names.push(post.to_string());
            }
            names.extend(rest);
            return Ok((c, names));
        }
    }
    if is_plain_number(first) && first != "1" && rest.is_empty() {
        return Ok((parse_scalar(ctx, first)?, Vec::new()));
    }
    Ok((Scalar::one(ctx), toks.to_vec()))
}

fn matching_paren(s: &str) -> Result<usize> {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse(format!("unbalanced parentheses in `{s}`")))
}
