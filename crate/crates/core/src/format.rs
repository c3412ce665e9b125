//! The plain-text system file format.
//!
//! ```text
//! # braid monoid <a, b | aba = bab>
//! alphabet: a b
//! option: complete
//! rule: b a b -> a b a
//! schema: b a^n b a -> a b a^2 b^(n-1) ; n=2..4
//! cyclic-rule: a b ~> b a ; x = a ; y = b
//! ```
//!
//! Words are whitespace-separated symbol names; `1` is the empty word and
//! `s^k` repeats a symbol. Inside a schema the exponent may be an affine
//! expression in the range variable (`n`, `n-1`, `2n+1`). A range may end in
//! a symbolic bound (`n=2..N`) that is filled in from [`ParseOptions`].
//! A cyclic rule may record conjugators `x`, `y` proving `lhs·x = x·rhs` and
//! `y·lhs = rhs·y` in the monoid.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rewriting::{CyclicRule, RewritingSystem, Semantics};
use crate::words::{tokens_with_columns, Alphabet, Symbol, Word};

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Value substituted for a symbolic schema upper bound such as `N`.
    pub schema_bound: Option<i64>,
    pub semantics_override: Option<Semantics>,
}

pub fn parse_system(text: &str) -> Result<RewritingSystem> {
    parse_system_with(text, &ParseOptions::default())
}

pub fn parse_system_with(text: &str, options: &ParseOptions) -> Result<RewritingSystem> {
    let mut alphabet: Option<Alphabet> = None;
    let mut rules: Vec<(Word, Word, Option<String>)> = Vec::new();
    let mut cyclic = Vec::new();
    let mut complete = false;
    let mut semantics = Semantics::Generic;
    let mut caveats = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, body)) = line.split_once(':') else {
            return Err(Error::parse(line_no, first_column(raw), "expected `key: value`"));
        };
        let body_col = key.chars().count() + 2;
        let key_col = first_column(raw);
        match key.trim() {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line_no, key_col, "alphabet declared twice"));
                }
                let names: Vec<&str> = body.split_whitespace().collect();
                if names.is_empty() {
                    return Err(Error::parse(line_no, body_col, "empty alphabet"));
                }
                alphabet = Some(
                    Alphabet::new(names.iter().copied())
                        .map_err(|e| Error::parse(line_no, body_col, e.to_string()))?,
                );
            }
            "option" => {
                let opt = body.trim();
                if opt == "complete" {
                    complete = true;
                } else if let Some(value) = opt.strip_prefix("semantics=") {
                    semantics = Semantics::parse(value.trim()).ok_or_else(|| {
                        Error::parse(line_no, body_col, format!("unknown semantics {value:?}"))
                    })?;
                } else {
                    return Err(Error::parse(
                        line_no,
                        body_col,
                        format!("unknown option {opt:?}"),
                    ));
                }
            }
            "rule" => {
                let al = need_alphabet(&alphabet, line_no, key_col)?;
                let (lhs, rhs) = split_sides(body, "->", line_no, body_col)?;
                let lhs = parse_side(al, lhs.0, line_no, body_col + lhs.1, None)?;
                let rhs = parse_side(al, rhs.0, line_no, body_col + rhs.1, None)?;
                check_rule(al, &lhs, &rhs, line_no, body_col)?;
                rules.push((lhs, rhs, None));
            }
            "schema" => {
                let al = need_alphabet(&alphabet, line_no, key_col)?;
                let Some((sides, range)) = body.split_once(';') else {
                    return Err(Error::parse(line_no, body_col, "schema needs `; n=lo..hi`"));
                };
                let range_col = body_col + sides.chars().count() + 1;
                let (var, lo, hi) = parse_range(range, options, line_no, range_col)?;
                let (lhs, rhs) = split_sides(sides, "->", line_no, body_col)?;
                for n in lo..=hi {
                    let env = Some((var, n));
                    let l = parse_side(al, lhs.0, line_no, body_col + lhs.1, env)?;
                    let r = parse_side(al, rhs.0, line_no, body_col + rhs.1, env)?;
                    check_rule(al, &l, &r, line_no, body_col)?;
                    rules.push((l, r, Some(format!("{var}={n}"))));
                }
                caveats.push(format!(
                    "line {line_no}: schema instantiated for {var}={lo}..{hi} only"
                ));
            }
            "cyclic-rule" => {
                let al = need_alphabet(&alphabet, line_no, key_col)?;
                let (rule, extras) = body.split_once(';').unwrap_or((body, ""));
                let (lhs, rhs) = split_sides(rule, "~>", line_no, body_col)?;
                let lhs = parse_side(al, lhs.0, line_no, body_col + lhs.1, None)?;
                let rhs = parse_side(al, rhs.0, line_no, body_col + rhs.1, None)?;
                let extras_col = body_col + rule.chars().count() + 1;
                let conjugators = parse_conjugators(al, extras, line_no, extras_col)?;
                cyclic.push(canonical_cyclic_rule(lhs, rhs, conjugators));
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    key_col,
                    format!("unknown directive {other:?}"),
                ));
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing `alphabet:` line"))?;
    let mut system = RewritingSystem::with_instances(alphabet, rules)?
        .asserting_complete(complete)
        .with_semantics(options.semantics_override.unwrap_or(semantics));
    let truncated = !caveats.is_empty();
    for c in caveats {
        system = system.with_caveat(c);
    }
    if truncated && !system.is_length_nonincreasing() {
        system = system.with_caveat(
            "some rules increase length; truncating schemas is potentially unsound".to_string(),
        );
    }
    Ok(system.with_cyclic_rules(cyclic))
}

/// Serializes a system back to the file format. Schema instances are written
/// as plain rules.
pub fn write_system(system: &RewritingSystem) -> String {
    let al = system.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", al.names().join(" "));
    if system.asserted_complete() {
        out.push_str("option: complete\n");
    }
    if system.semantics() != Semantics::Generic {
        let _ = writeln!(out, "option: semantics={}", system.semantics().as_str());
    }
    for rule in system.rules() {
        let _ = write!(out, "rule: {}", system.render_rule(rule));
        if let Some(inst) = &rule.instance {
            let _ = write!(out, "  # {inst}");
        }
        out.push('\n');
    }
    for c in system.cyclic_rules() {
        let _ = write!(out, "cyclic-rule: {} ~> {}", al.render(&c.lhs), al.render(&c.rhs));
        if let Some((x, y)) = &c.conjugators {
            let _ = write!(out, " ; x = {} ; y = {}", al.render(x), al.render(y));
        }
        out.push('\n');
    }
    out
}

/// Parses the optional `; x = … ; y = …` tail of a cyclic rule.
fn parse_conjugators(al: &Alphabet, text: &str, line: usize, col: usize) -> Result<Option<(Word, Word)>> {
    if text.trim().is_empty() {
        return Ok(None);
    }
    let mut x = None;
    let mut y = None;
    let mut offset = 0;
    for part in text.split(';') {
        let part_col = col + offset;
        offset += part.chars().count() + 1;
        let Some((key, value)) = part.split_once('=') else {
            return Err(Error::parse(line, part_col, "expected `x = word` or `y = word`"));
        };
        let value_col = part_col + key.chars().count() + 1;
        let word = parse_side(al, value, line, value_col, None)?;
        match key.trim() {
            "x" => x = Some(word),
            "y" => y = Some(word),
            other => {
                return Err(Error::parse(line, part_col, format!("unknown conjugator {other:?}")));
            }
        }
    }
    match (x, y) {
        (Some(x), Some(y)) => Ok(Some((x, y))),
        _ => Err(Error::parse(line, col, "both `x` and `y` must be given")),
    }
}

/// Stores both sides as canonical rotations, moving the conjugators along.
fn canonical_cyclic_rule(lhs: Word, rhs: Word, conjugators: Option<(Word, Word)>) -> CyclicRule {
    let lc = lhs.canonical_rotation();
    let rc = rhs.canonical_rotation();
    let conjugators = conjugators.map(|(x, y)| {
        let i = lc.rotation_to(&lhs).expect("rotation of itself");
        let j = rhs.rotation_to(&rc).expect("rotation of itself");
        let (x1, y1) = lc.rotation_conjugators(i);
        let (x2, y2) = rhs.rotation_conjugators(j);
        (x1.concat(&x).concat(&x2), y2.concat(&y).concat(&y1))
    });
    CyclicRule {
        lhs: lc,
        rhs: rc,
        conjugators,
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn first_column(line: &str) -> usize {
    line.chars().take_while(|c| c.is_whitespace()).count() + 1
}

fn need_alphabet(al: &Option<Alphabet>, line: usize, col: usize) -> Result<&Alphabet> {
    al.as_ref()
        .ok_or_else(|| Error::parse(line, col, "`alphabet:` must come before rules"))
}

/// Splits at `arrow`; returns each side with its column offset in `body`.
fn split_sides<'a>(
    body: &'a str,
    arrow: &str,
    line: usize,
    col: usize,
) -> Result<((&'a str, usize), (&'a str, usize))> {
    let Some(i) = body.find(arrow) else {
        return Err(Error::parse(line, col, format!("expected `{arrow}`")));
    };
    let left = &body[..i];
    let right = &body[i + arrow.len()..];
    if right.contains(arrow) {
        return Err(Error::parse(line, col, format!("more than one `{arrow}`")));
    }
    let right_offset = body[..i + arrow.len()].chars().count();
    Ok(((left, 0), (right, right_offset)))
}

fn check_rule(al: &Alphabet, lhs: &Word, rhs: &Word, line: usize, col: usize) -> Result<()> {
    if lhs.is_empty() {
        return Err(Error::parse(line, col, "left-hand side is empty"));
    }
    if lhs == rhs {
        return Err(Error::parse(
            line,
            col,
            format!("rule rewrites {} to itself", al.render(lhs)),
        ));
    }
    Ok(())
}

fn parse_range<'a>(
    text: &'a str,
    options: &ParseOptions,
    line: usize,
    col: usize,
) -> Result<(&'a str, i64, i64)> {
    let err = |m: &str| Error::parse(line, col + first_column(text) - 1, m.to_string());
    let (var, bounds) = text.split_once('=').ok_or_else(|| err("expected `n=lo..hi`"))?;
    let var = var.trim();
    if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(err("range variable must be alphabetic"));
    }
    let (lo, hi) = bounds.split_once("..").ok_or_else(|| err("expected `lo..hi`"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| err("bad lower bound"))?;
    let hi = hi.trim();
    let hi: i64 = match hi.parse() {
        Ok(v) => v,
        Err(_) if hi.chars().all(|c| c.is_ascii_alphabetic()) && !hi.is_empty() => options
            .schema_bound
            .ok_or_else(|| err("symbolic schema bound needs an explicit value"))?,
        Err(_) => return Err(err("bad upper bound")),
    };
    if hi < lo {
        return Err(err("empty schema range"));
    }
    Ok((var, lo, hi))
}

fn parse_side(
    al: &Alphabet,
    text: &str,
    line: usize,
    col: usize,
    env: Option<(&str, i64)>,
) -> Result<Word> {
    let mut out: Vec<Symbol> = Vec::new();
    for (c, token) in tokens_with_columns(text) {
        let column = col + c - 1;
        if token == "1" {
            continue;
        }
        let (name, count) = match token.split_once('^') {
            Some((name, exp)) => {
                let count = eval_exponent(exp, env).ok_or_else(|| {
                    Error::parse(line, column, format!("bad exponent in {token:?}"))
                })?;
                (name, count)
            }
            None => (token, 1),
        };
        let sym = al
            .symbol(name)
            .ok_or_else(|| Error::parse(line, column, format!("unknown symbol {name:?}")))?;
        if count < 0 {
            return Err(Error::parse(
                line,
                column,
                format!("negative exponent in {token:?}"),
            ));
        }
        out.extend(std::iter::repeat_n(sym, count as usize));
    }
    Ok(Word(out))
}

/// Evaluates `k`, `n`, `an`, `an+b`, `an-b`, `n+b` with optional parentheses.
fn eval_exponent(exp: &str, env: Option<(&str, i64)>) -> Option<i64> {
    let exp = exp.trim();
    let exp = exp
        .strip_prefix('(')
        .and_then(|e| e.strip_suffix(')'))
        .unwrap_or(exp);
    let exp: String = exp.chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(k) = exp.parse::<i64>() {
        return Some(k);
    }
    let (var, value) = env?;
    let at = exp.find(var)?;
    let coef = match &exp[..at] {
        "" => 1,
        c => c.strip_suffix('*').unwrap_or(c).parse::<i64>().ok()?,
    };
    let rest = &exp[at + var.len()..];
    let offset = match rest {
        "" => 0,
        r => {
            let (sign, digits) = r.split_at(1);
            let k: i64 = digits.parse().ok()?;
            match sign {
                "+" => k,
                "-" => -k,
                _ => return None,
            }
        }
    };
    Some(coef * value + offset)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BRAID: &str = "\
# braid monoid
alphabet: a b
option: complete
rule: b a b -> a b a
schema: b a^n b a -> a b a^2 b^(n-1) ; n=2..4
";

    #[test]
    fn parses_braid_schema() {
        let r = parse_system(BRAID).unwrap();
        assert_eq!(r.rules().len(), 4);
        assert!(r.asserted_complete());
        assert!(r.is_length_preserving());
        let al = r.alphabet();
        let last = &r.rules()[3];
        assert_eq!(last.lhs, al.parse_word("b a^4 b a").unwrap());
        assert_eq!(last.rhs, al.parse_word("a b a^2 b^3").unwrap());
        assert_eq!(last.instance.as_deref(), Some("n=4"));
        assert_eq!(r.caveats().len(), 1);
    }

    #[test]
    fn symbolic_bound_needs_option() {
        let text = BRAID.replace("n=2..4", "n=2..N");
        assert!(matches!(
            parse_system(&text),
            Err(Error::Parse { line: 5, .. })
        ));
        let r = parse_system_with(
            &text,
            &ParseOptions {
                schema_bound: Some(6),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.rules().len(), 6);
    }

    #[test]
    fn cyclic_rule_conjugators_follow_canonicalization() {
        let text = "alphabet: a b c\ncyclic-rule: b a ~> c ; x = c ; y = a\n";
        let r = parse_system(text).unwrap();
        let al = r.alphabet();
        let c = &r.cyclic_rules()[0];
        assert_eq!(c.lhs, al.parse_word("a b").unwrap());
        // a b = (a)(b) rotates to b a, so x gains a prefix a and y a suffix b.
        assert_eq!(
            c.conjugators,
            Some((al.parse_word("a c").unwrap(), al.parse_word("a b").unwrap()))
        );
        let err = parse_system("alphabet: a b\ncyclic-rule: a b ~> b ; x = a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_system("alphabet: a b\ncyclic-rule: a b ~> b ; x = q ; y = a\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 29,
                message: "unknown symbol \"q\"".into()
            }
        );
    }

    #[test]
    fn errors_name_line_and_column() {
        let err = parse_system("alphabet: a b\nrule: a q -> b\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 9,
                message: "unknown symbol \"q\"".into()
            }
        );
        assert!(matches!(
            parse_system("rule: a -> b\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_system("alphabet: a\nrule: a -> a\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_system("alphabet: a\nfrobnicate: yes\n"),
            Err(Error::Parse { line: 2, column: 1, .. })
        ));
    }

    #[test]
    fn exponent_expressions() {
        let env = Some(("n", 3));
        assert_eq!(eval_exponent("n", env), Some(3));
        assert_eq!(eval_exponent("(n-1)", env), Some(2));
        assert_eq!(eval_exponent("2n+1", env), Some(7));
        assert_eq!(eval_exponent("2*n", env), Some(6));
        assert_eq!(eval_exponent("4", None), Some(4));
        assert_eq!(eval_exponent("m", env), None);
    }

    #[test]
    fn write_then_parse_round_trips() {
        let text = "alphabet: a b ab_ ba_ D\noption: complete\noption: semantics=special\nrule: a b -> ab_\nrule: ba_ -> 1\ncyclic-rule: ba_ ~> ab_ ; x = b ; y = a b a\n";
        let r = parse_system(text).unwrap();
        let written = write_system(&r);
        let again = parse_system(&written).unwrap();
        assert_eq!(write_system(&again), written);
        assert_eq!(again.semantics(), Semantics::Special);
        assert_eq!(again.cyclic_rules().len(), 1);
        let al = again.alphabet();
        assert_eq!(
            again.cyclic_rules()[0].conjugators,
            Some((al.parse_word("b").unwrap(), al.parse_word("a b a").unwrap()))
        );
        assert!(again.rules()[1].rhs.is_empty());
    }
}
