//! Line-oriented arrangement files.
//!
//! ```text
//! # comment
//! dim 2
//! 1 -2 -80        # a_1 .. a_l b, meaning a·x + b = 0
//! 1 0 -200
//! flag            # optional
//! point 170 20
//! dir 1 0
//! dir 0 1
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Flag, Hyperplane};
use crate::rational::{parse_rat, Rat};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn rationals(toks: &[Token<'_>], line: usize) -> Result<Vec<Rat>> {
    toks.iter()
        .map(|t| parse_rat(t.text).ok_or_else(|| parse_error(line, t.column, format!("invalid rational {:?}", t.text))))
        .collect()
}

/// Parses an arrangement and its optional flag.
pub fn parse_input(text: &str) -> Result<(Arrangement, Option<Flag>)> {
    let mut dim: Option<usize> = None;
    let mut hyperplanes = Vec::new();
    let mut point: Option<Vec<Rat>> = None;
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    let mut in_flag = false;
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = tokens(raw);
        let head = &toks[0];
        let Some(d) = dim else {
            if head.text != "dim" || toks.len() != 2 {
                return Err(parse_error(line, head.column, "expected `dim <l>`"));
            }
            let value: usize = toks[1]
                .text
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| parse_error(line, toks[1].column, "dimension must be a positive integer"))?;
            dim = Some(value);
            continue;
        };
        match head.text {
            "flag" if !in_flag && toks.len() == 1 => in_flag = true,
            "point" => {
                if point.is_some() {
                    return Err(parse_error(line, head.column, "duplicate `point` line"));
                }
                let v = rationals(&toks[1..], line)?;
                if v.len() != d {
                    return Err(Error::DimensionMismatch {
                        context: format!("flag point on line {line}"),
                        expected: d,
                        found: v.len(),
                    });
                }
                in_flag = true;
                point = Some(v);
            }
            "dir" => {
                if point.is_none() {
                    return Err(parse_error(line, head.column, "`dir` before `point`"));
                }
                let v = rationals(&toks[1..], line)?;
                if v.len() != d {
                    return Err(Error::DimensionMismatch {
                        context: format!("flag direction on line {line}"),
                        expected: d,
                        found: v.len(),
                    });
                }
                dirs.push(v);
            }
            _ if in_flag => {
                return Err(parse_error(line, head.column, "hyperplane after the flag block"));
            }
            _ => {
                let v = rationals(&toks, line)?;
                if v.len() != d + 1 {
                    return Err(Error::DimensionMismatch {
                        context: format!("hyperplane on line {line}"),
                        expected: d + 1,
                        found: v.len(),
                    });
                }
                let mut coefficients = v;
                let offset = coefficients.pop().expect("nonempty");
                let h =
                    Hyperplane::new(coefficients, offset).map_err(|e| parse_error(line, head.column, e.to_string()))?;
                hyperplanes.push(h);
            }
        }
    }

    let dim = dim.ok_or_else(|| parse_error(last_line.max(1), 1, "missing `dim` line"))?;
    let arrangement = Arrangement::new(dim, hyperplanes)?;
    let flag = match point {
        None if in_flag => return Err(parse_error(last_line, 1, "flag block without `point`")),
        None => None,
        Some(p) => {
            if dirs.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "flag `dir` lines".into(),
                    expected: dim,
                    found: dirs.len(),
                });
            }
            Some(Flag::new(p, dirs)?)
        }
    };
    Ok((arrangement, flag))
}

fn join(v: &[Rat]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Inverse of [`parse_input`].
pub fn print_input(arrangement: &Arrangement, flag: Option<&Flag>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", arrangement.dim());
    for h in arrangement.hyperplanes() {
        let _ = writeln!(out, "{} {}", join(h.coefficients()), h.offset());
    }
    if let Some(f) = flag {
        out.push_str("flag\n");
        let _ = writeln!(out, "point {}", join(f.basepoint()));
        for d in f.directions() {
            let _ = writeln!(out, "dir {}", join(d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn one_point_on_a_line() {
        let (a, f) = parse_input("dim 1\n1 0\n").unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.len(), 1);
        assert_eq!(a.hyperplane(0).coefficients(), &[rat(1)]);
        assert_eq!(a.hyperplane(0).offset(), &rat(0));
        assert!(f.is_none());
    }

    #[test]
    fn fractions_and_comments() {
        let (a, _) = parse_input("# hi\n\ndim 2\n  1/2 -3/4 5\n").unwrap();
        assert_eq!(a.hyperplane(0).coefficients(), &[ratio(1, 2), ratio(-3, 4)]);
    }

    #[test]
    fn malformed_rational_is_located() {
        let err = parse_input("dim 2\n1 1//2 0\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 3,
                message: "invalid rational \"1//2\"".into()
            }
        );
    }

    #[test]
    fn wrong_arity() {
        assert!(matches!(
            parse_input("dim 2\n1 0\n"),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_input("dim 2\n1 0 0\nflag\npoint 0 0\ndir 1 0\n"),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1,
                ..
            })
        ));
        assert!(matches!(parse_input("1 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_input("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn flag_block_round_trips() {
        let text = "dim 2\n1 -2 -80\n1 0 -200\nflag\npoint 170 20\ndir 1 0\ndir 0 1\n";
        let (a, f) = parse_input(text).unwrap();
        assert_eq!(print_input(&a, f.as_ref()), text);
    }
}
