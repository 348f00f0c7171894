//! Poisson bracket of Wilson-loop polynomials.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{rat, GroupSpec, Series};
use crate::diagram::{find_heading, join_words, Diagram, FormalSum, Loop, Monomial, OrientedArc};
use crate::error::{Error, Result};

/// How rank-two brackets are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Form {
    /// `1/2 sum eps (W_{C*C'} - W_{C*C'bar})`
    Reversal,
    /// `sum eps (W_{C*C'} - 1/2 W_C W_C')`
    Alt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketForm {
    Gln,
    Sl2(Sl2Form),
}

impl BracketForm {
    /// The form whose value matches the `h` term of the star product.
    pub fn default_for(group: &GroupSpec) -> Self {
        if group.kind.is_rank_two() {
            BracketForm::Sl2(Sl2Form::Alt)
        } else {
            BracketForm::Gln
        }
    }
}

/// A transversal intersection of two loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub point: usize,
    /// Position in the first loop of the arc running into the point.
    pub first: usize,
    /// Same for the second loop.
    pub second: usize,
    /// Intersection sign of the two tangents, first loop first.
    pub sign: i8,
}

/// Points where `x` and `y` meet, one strand each.
pub fn crossings_between(d: &Diagram, x: &Loop, y: &Loop) -> Vec<Crossing> {
    let words = [x.word().to_vec(), y.word().to_vec()];
    let mut out = Vec::new();
    for p in 0..d.points().len() {
        if let [(0, i), (1, j)] = find_heading(d, &words, p).as_slice() {
            if let Some(sign) = d.pair_sign(words[0][*i], words[1][*j]) {
                out.push(Crossing {
                    point: p,
                    first: *i,
                    second: *j,
                    sign,
                });
            }
        }
    }
    out
}

fn check_disjoint<'a>(
    d: &Diagram,
    xs: impl IntoIterator<Item = &'a Loop>,
    ys: impl IntoIterator<Item = &'a Loop>,
) -> Result<()> {
    let seen: HashSet<_> = xs.into_iter().flat_map(Loop::arcs).collect();
    for y in ys {
        if let Some(a) = y.arcs().find(|a| seen.contains(a)) {
            return Err(Error::NotTransversal(d.arc_name(a)));
        }
    }
    Ok(())
}

fn concat(x: &Loop, y: &Loop, c: &Crossing, reverse_second: bool) -> Loop {
    let w: Vec<OrientedArc> = join_words(x.word(), c.first, y.word(), c.second, reverse_second);
    Loop::from_word_unchecked(w)
}

/// Bracket of two loops with exact rational coefficients.
pub fn bracket_loops(d: &Diagram, x: &Loop, y: &Loop, form: BracketForm) -> Result<Vec<(Monomial, BigRational)>> {
    check_disjoint(d, [x], [y])?;
    let mut out = Vec::new();
    let half = rat(1, 2);
    for c in crossings_between(d, x, y) {
        let eps = rat(c.sign as i64, 1);
        let xy = Monomial::single(concat(x, y, &c, false));
        match form {
            BracketForm::Gln => out.push((xy, eps)),
            BracketForm::Sl2(Sl2Form::Alt) => {
                out.push((xy, eps.clone()));
                out.push((Monomial::new(vec![x.clone(), y.clone()]), -&eps * &half));
            }
            BracketForm::Sl2(Sl2Form::Reversal) => {
                out.push((xy, &eps * &half));
                out.push((Monomial::single(concat(x, y, &c, true)), -&eps * &half));
            }
        }
    }
    Ok(out)
}

fn collect(terms: Vec<(Monomial, BigRational)>, order: usize) -> FormalSum {
    terms
        .into_iter()
        .map(|(m, r)| (m, Series::constant(r, order)))
        .collect()
}

/// `sum_i eps_i W_{C *_i C'}`.
pub fn bracket_gln(d: &Diagram, x: &Loop, y: &Loop, order: usize) -> Result<FormalSum> {
    Ok(collect(bracket_loops(d, x, y, BracketForm::Gln)?, order))
}

pub fn bracket_sl2(d: &Diagram, x: &Loop, y: &Loop, form: Sl2Form, order: usize) -> Result<FormalSum> {
    Ok(collect(bracket_loops(d, x, y, BracketForm::Sl2(form))?, order))
}

/// Bilinear extension with the Leibniz rule inside each monomial.
pub fn bracket_poly(d: &Diagram, f: &FormalSum, g: &FormalSum, form: BracketForm) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            check_disjoint(d, m1.loops(), m2.loops())?;
            let c12 = c1 * c2;
            for (i, x) in m1.loops().iter().enumerate() {
                let rest1 = m1.without(i);
                for (j, y) in m2.loops().iter().enumerate() {
                    let rest = rest1.mul(&m2.without(j));
                    for (m, r) in bracket_loops(d, x, y, form)? {
                        if !r.is_zero() {
                            out.add_term(m.mul(&rest), c12.scale(&r));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The bracket in the group's default form.
pub fn bracket(d: &Diagram, f: &FormalSum, g: &FormalSum, group: &GroupSpec) -> Result<FormalSum> {
    bracket_poly(d, f, g, BracketForm::default_for(group))
}

/// `W_C` for every curve at the given level, as a formal sum with coefficient 1.
pub fn level_product(d: &Diagram, level: i64, order: usize) -> FormalSum {
    FormalSum::term(d.monomial_at_level(level), Series::constant(BigRational::one(), order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::DEFAULT_ORDER;
    use crate::diagram::{reverse, Orientation};
    use crate::holonomy::HolonomyAssignment;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const K: usize = DEFAULT_ORDER;

    fn one(l: &Loop) -> FormalSum {
        FormalSum::term(Monomial::single(l.clone()), Series::one(K))
    }

    fn two_crossings() -> Diagram {
        Diagram::from_spec(&[("a", 1), ("b", -1)], &[("C", 1, &["a", "b"]), ("D", 0, &["a", "b"])]).unwrap()
    }

    #[test]
    fn one_positive_crossing() {
        let d = Diagram::from_spec(&[("a", 1)], &[("C", 1, &["a"]), ("D", 0, &["a"])]).unwrap();
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        let b = bracket_gln(&d, &x, &y, K).unwrap();
        let xy = crate::diagram::concat_at(&d, &x, &y, 0).unwrap();
        assert_eq!(b, one(&xy));
    }

    #[test]
    fn disjoint_loops_commute() {
        let d = Diagram::from_spec(&[], &[("C", 1, &[]), ("D", 0, &[])]).unwrap();
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        assert!(bracket_gln(&d, &x, &y, K).unwrap().is_zero());
        for form in [Sl2Form::Alt, Sl2Form::Reversal] {
            assert!(bracket_sl2(&d, &x, &y, form, K).unwrap().is_zero());
        }
    }

    #[test]
    fn opposite_signs() {
        let d = two_crossings();
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        let cs = crossings_between(&d, &x, &y);
        assert_eq!(cs.iter().map(|c| c.sign).collect::<Vec<_>>(), vec![1, -1]);
        let b = bracket_gln(&d, &x, &y, K).unwrap();
        let mut expect = FormalSum::zero();
        for c in &cs {
            expect.add_term(
                Monomial::single(concat(&x, &y, c, false)),
                Series::constant(rat(c.sign as i64, 1), K),
            );
        }
        assert_eq!(b, expect);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn alt_form_terms() {
        let d = Diagram::from_spec(&[("a", 1)], &[("C", 1, &["a"]), ("D", 0, &["a"])]).unwrap();
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        let b = bracket_sl2(&d, &x, &y, Sl2Form::Alt, K).unwrap();
        let xy = Monomial::single(crate::diagram::concat_at(&d, &x, &y, 0).unwrap());
        assert_eq!(b.coeff(&xy), Some(&Series::one(K)));
        let prod = Monomial::new(vec![x, y]);
        assert_eq!(b.coeff(&prod), Some(&Series::constant(rat(-1, 2), K)));
    }

    #[test]
    fn rank_two_forms_agree_numerically() {
        let d = two_crossings();
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        let alt = bracket_sl2(&d, &x, &y, Sl2Form::Alt, K).unwrap();
        let rev = bracket_sl2(&d, &x, &y, Sl2Form::Reversal, K).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(2);
        for g in [GroupSpec::su2(), GroupSpec::sl2r()] {
            let a = HolonomyAssignment::random(&d, g, &mut r);
            let diff = a.eval_formal(&alt, 0.0).unwrap() - a.eval_formal(&rev, 0.0).unwrap();
            assert!(diff.norm() < 1e-10);
        }
    }

    #[test]
    fn antisymmetry_and_constants() {
        let d = two_crossings();
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        for form in [
            BracketForm::Gln,
            BracketForm::Sl2(Sl2Form::Alt),
            BracketForm::Sl2(Sl2Form::Reversal),
        ] {
            let (f, g) = (one(&x), one(&reverse(&y)));
            let fg = bracket_poly(&d, &f, &g, form).unwrap();
            let gf = bracket_poly(&d, &g, &f, form).unwrap();
            let sum = fg.add(&gf);
            let sum = if matches!(form, BracketForm::Sl2(Sl2Form::Reversal)) {
                sum.canonical(Orientation::Unoriented)
            } else {
                sum
            };
            assert!(sum.is_zero(), "{form:?}");
        }
        let unit = FormalSum::term(Monomial::one(), Series::one(K));
        assert!(bracket_poly(&d, &unit, &one(&y), BracketForm::Gln).unwrap().is_zero());
    }

    #[test]
    fn leibniz_on_a_square() {
        let d = Diagram::from_spec(&[("a", 1)], &[("C", 1, &["a"]), ("D", 0, &["a"])]).unwrap();
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        let sq = FormalSum::term(Monomial::new(vec![y.clone(), y.clone()]), Series::one(K));
        let b = bracket_poly(&d, &one(&x), &sq, BracketForm::Gln).unwrap();
        let xy = crate::diagram::concat_at(&d, &x, &y, 0).unwrap();
        let expect = FormalSum::term(Monomial::new(vec![xy, y]), Series::constant(rat(2, 1), K));
        assert_eq!(b, expect);
    }

    #[test]
    fn shared_arcs_rejected() {
        let d = two_crossings();
        let x = d.curve_loop(0);
        let err = bracket_poly(&d, &one(&x), &one(&x), BracketForm::Gln).unwrap_err();
        assert!(matches!(err, Error::NotTransversal(_)));
    }
}
