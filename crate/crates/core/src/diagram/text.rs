//! Line-oriented diagram format.
//!
//! ```text
//! # comment
//! point a +
//! point b -
//! curve C level 1: a b
//! curve D level 0: a b
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use super::{CrossingPoint, Curve, Diagram};
use crate::error::{Error, Result};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((offset + s[..b].chars().count() + 1, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((offset + s[..b].chars().count() + 1, &s[b..]));
    }
    out
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parse the text format. Name resolution happens here; the two-pass rule is
/// left to [`Diagram::validate`].
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let mut points: Vec<CrossingPoint> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut curves = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let (head, tail) = match content.find(':') {
            Some(i) => (&content[..i], Some((&content[i + 1..], content[..=i].chars().count()))),
            None => (content, None),
        };
        let toks = tokens(head, 0);
        let Some(&(col, keyword)) = toks.first() else {
            if let Some((_, c)) = tail {
                return Err(syntax(line, c, "unexpected `:`"));
            }
            continue;
        };
        match keyword {
            "point" => {
                if let Some((_, c)) = tail {
                    return Err(syntax(line, c, "unexpected `:` in point declaration"));
                }
                let [_, (icol, id), (scol, sign)] = toks.as_slice() else {
                    let c = toks.get(3).map_or(col, |t| t.0);
                    return Err(syntax(line, c, "expected `point <id> <+|->`"));
                };
                if !is_ident(id) {
                    return Err(syntax(line, *icol, format!("bad point id `{id}`")));
                }
                let sign = match *sign {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(syntax(line, *scol, format!("bad sign `{other}`, expected + or -"))),
                };
                if index.insert(id.to_string(), points.len()).is_some() {
                    return Err(syntax(line, *icol, format!("duplicate point `{id}`")));
                }
                points.push(CrossingPoint {
                    id: id.to_string(),
                    sign,
                });
            }
            "curve" => {
                let Some((rest, colon)) = tail else {
                    return Err(syntax(line, col, "expected `curve <id> level <int>: <points>`"));
                };
                let [_, (icol, id), (lcol, kw), (vcol, level)] = toks.as_slice() else {
                    return Err(syntax(line, col, "expected `curve <id> level <int>:`"));
                };
                if !is_ident(id) || id.contains('.') {
                    return Err(syntax(line, *icol, format!("bad curve id `{id}`")));
                }
                if *kw != "level" {
                    return Err(syntax(line, *lcol, format!("expected `level`, found `{kw}`")));
                }
                let level: i64 = level
                    .parse()
                    .map_err(|_| syntax(line, *vcol, format!("bad level `{level}`")))?;
                let mut passes = Vec::new();
                for (pcol, p) in tokens(rest, colon) {
                    match index.get(p) {
                        Some(&i) => passes.push(i),
                        None => return Err(syntax(line, pcol, format!("undeclared point `{p}`"))),
                    }
                }
                curves.push(Curve {
                    id: id.to_string(),
                    passes,
                    level,
                });
            }
            other => return Err(syntax(line, col, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(Diagram::new(points, curves))
}

pub fn render_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    for p in d.points() {
        let sign = if p.sign > 0 { '+' } else { '-' };
        let _ = writeln!(out, "point {} {}", p.id, sign);
    }
    for c in d.curves() {
        let _ = write!(out, "curve {} level {}:", c.id, c.level);
        for &p in &c.passes {
            let _ = write!(out, " {}", d.points()[p].id);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_crossing() {
        let d = parse_diagram("point a +\ncurve C level 1: a\ncurve D level 0: a").unwrap();
        d.validate().unwrap();
        assert_eq!(d.points().len(), 1);
        assert_eq!(d.sign(0), 1);
        assert_eq!(d.curves()[0].level, 1);
        assert_eq!(d.curves()[1].passes, vec![0]);
    }

    #[test]
    fn malformed_sign() {
        let err = parse_diagram("point a +\npoint b x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 9,
                message: "bad sign `x`, expected + or -".into()
            }
        );
    }

    #[test]
    fn undeclared_point_position() {
        let err = parse_diagram("point a +\ncurve C level 0: a  zz").unwrap_err();
        match err {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 21)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_free_loops() {
        let d = parse_diagram("# nothing\n\ncurve E level -3:   # free\n").unwrap();
        assert_eq!(d.curves()[0].level, -3);
        assert!(d.curves()[0].passes.is_empty());
        assert_eq!(render_diagram(&d), "curve E level -3:\n");
    }

    #[test]
    fn bad_keyword_and_level() {
        assert!(parse_diagram("pointy a +").is_err());
        assert!(parse_diagram("curve C lvl 1: ").is_err());
        assert!(parse_diagram("curve C level x: ").is_err());
        assert!(parse_diagram("curve C level 1").is_err());
    }
}
