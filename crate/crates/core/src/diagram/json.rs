//! JSON form of formal sums: a list of
//! `{"coeff": ["p/q", ...], "monomial": [[["C.0", "fwd"], ...], ...]}`.

use serde::{Deserialize, Serialize};

use super::{Diagram, FormalSum, Loop, Monomial, OrientedArc};
use crate::coeff::Series;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Vec<String>,
    pub monomial: Vec<Vec<[String; 2]>>,
}

pub type FormalSumJson = Vec<TermJson>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericTermJson {
    pub value: f64,
    pub monomial: Vec<Vec<[String; 2]>>,
}

fn monomial_to_json(d: &Diagram, m: &Monomial) -> Vec<Vec<[String; 2]>> {
    m.loops()
        .iter()
        .map(|l| {
            l.word()
                .iter()
                .map(|oa| {
                    let dir = if oa.reversed { "rev" } else { "fwd" };
                    [d.arc_name(oa.arc), dir.to_string()]
                })
                .collect()
        })
        .collect()
}

fn monomial_from_json(d: &Diagram, m: &[Vec<[String; 2]>]) -> Result<Monomial> {
    let loops = m
        .iter()
        .map(|word| {
            let word = word
                .iter()
                .map(|[name, dir]| {
                    let arc = d.arc_by_name(name)?;
                    let reversed = match dir.as_str() {
                        "fwd" => false,
                        "rev" => true,
                        other => return Err(Error::Json(format!("bad direction `{other}`"))),
                    };
                    Ok(OrientedArc { arc, reversed })
                })
                .collect::<Result<Vec<_>>>()?;
            Loop::new(d, word)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Monomial::new(loops))
}

impl FormalSum<Series> {
    pub fn to_json(&self, d: &Diagram) -> FormalSumJson {
        self.terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_strings(),
                monomial: monomial_to_json(d, m),
            })
            .collect()
    }

    pub fn from_json(d: &Diagram, terms: &[TermJson]) -> Result<Self> {
        let mut out = FormalSum::zero();
        for t in terms {
            out.add_term(monomial_from_json(d, &t.monomial)?, Series::from_strings(&t.coeff)?);
        }
        Ok(out)
    }

    pub fn to_json_string(&self, d: &Diagram) -> String {
        serde_json::to_string_pretty(&self.to_json(d)).expect("formal sums serialize")
    }

    pub fn from_json_str(d: &Diagram, s: &str) -> Result<Self> {
        let terms: FormalSumJson = serde_json::from_str(s)?;
        Self::from_json(d, &terms)
    }
}

impl FormalSum<f64> {
    pub fn to_json(&self, d: &Diagram) -> Vec<NumericTermJson> {
        self.terms()
            .map(|(m, c)| NumericTermJson {
                value: *c,
                monomial: monomial_to_json(d, m),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn round_trip() {
        let d = Diagram::from_spec(&[("a", 1)], &[("C", 1, &["a"]), ("D", 0, &["a"])]).unwrap();
        let m = Monomial::new(vec![d.curve_loop(0), d.curve_loop(1).reversed()]);
        let s = FormalSum::term(m, Series::from_coeffs(vec![rat(1, 1), rat(-1, 2)]));
        let text = s.to_json_string(&d);
        assert!(text.contains("\"-1/2\""));
        assert!(text.contains("\"rev\""));
        let back = FormalSum::from_json_str(&d, &text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json_string(&d), text);
    }

    #[test]
    fn rejects_unknown_arcs() {
        let d = Diagram::from_spec(&[], &[("C", 0, &[])]).unwrap();
        let bad = r#"[{"coeff": ["1"], "monomial": [[["Z.0", "fwd"]]]}]"#;
        assert!(FormalSum::from_json_str(&d, bad).is_err());
    }
}
