//! Expectation of stacked diagrams by a state sum over inter-level
//! crossings, and the star product built on it.

use std::collections::{HashMap, HashSet};

use num_complex::Complex64;

use crate::coeff::{crossing_coeffs, ClosedForm, CrossingCoeffs, CrossingType, GroupSpec, Scalar, Series};
use crate::diagram::{
    find_heading, join_words, split_word, ArcId, Diagram, FormalSum, Loop, Monomial, Orientation, OrientedArc,
};
use crate::error::{Error, Result};
use crate::goldman::bracket;
use crate::holonomy::HolonomyAssignment;

/// Loops with integer heights. Crossings between loops at different heights
/// are resolved; all others are virtual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stacked {
    loops: Vec<(Loop, i64)>,
}

/// A crossing between strands at different heights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActiveCrossing {
    pub point: usize,
    pub upper: OrientedArc,
    pub lower: OrientedArc,
    pub ty: CrossingType,
}

impl Stacked {
    /// Every arc may occur at most once across all loops.
    pub fn new(d: &Diagram, loops: Vec<(Loop, i64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (l, _) in &loops {
            for a in l.arcs() {
                if !seen.insert(a) {
                    return Err(Error::NotTransversal(d.arc_name(a)));
                }
            }
        }
        Ok(Stacked { loops })
    }

    /// The curves of the diagram at their declared levels.
    pub fn from_diagram(d: &Diagram) -> Self {
        Stacked {
            loops: d.stacked_loops(),
        }
    }

    /// Monomials placed at the given heights.
    pub fn from_monomials(d: &Diagram, layers: &[(&Monomial, i64)]) -> Result<Self> {
        let loops = layers
            .iter()
            .flat_map(|(m, h)| m.loops().iter().map(move |l| (l.clone(), *h)))
            .collect();
        Self::new(d, loops)
    }

    pub fn loops(&self) -> &[(Loop, i64)] {
        &self.loops
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.loops.iter().map(|(l, _)| l.clone()).collect())
    }

    fn arc_levels(&self) -> HashMap<ArcId, i64> {
        self.loops
            .iter()
            .flat_map(|(l, h)| l.arcs().map(move |a| (a, *h)))
            .collect()
    }

    fn words(&self) -> Vec<Vec<OrientedArc>> {
        self.loops.iter().map(|(l, _)| l.word().to_vec()).collect()
    }

    /// Active crossings, sorted by point id. The type is over when the
    /// intersection sign of (upper, lower) is positive.
    pub fn active_crossings(&self, d: &Diagram) -> Vec<ActiveCrossing> {
        let levels = self.arc_levels();
        let words = self.words();
        let mut out = Vec::new();
        for p in 0..d.points().len() {
            let [(w1, i), (w2, j)] = find_heading(d, &words, p)[..] else {
                continue;
            };
            let (a, b) = (words[w1][i], words[w2][j]);
            let (la, lb) = (levels[&a.arc], levels[&b.arc]);
            if la == lb {
                continue;
            }
            let (upper, lower) = if la > lb { (a, b) } else { (b, a) };
            let Some(sign) = d.pair_sign(upper, lower) else {
                continue;
            };
            out.push(ActiveCrossing {
                point: p,
                upper,
                lower,
                ty: CrossingType::from_sign(sign),
            });
        }
        out.sort_by(|x, y| d.points()[x.point].id.cmp(&d.points()[y.point].id));
        out
    }
}

/// One branch of a crossing resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    /// Leave the crossing as it is.
    Keep,
    /// Reconnect so that the original orientations are preserved.
    Oriented,
    /// The other reconnection: one strand is traversed backwards afterwards.
    Reversed,
}

/// Apply a smoothing at `c` to the current words. The crossing is located by
/// the arcs currently running into its point, and the oriented/reversed
/// choice refers to the orientations the crossing had originally.
fn smooth(
    d: &Diagram,
    words: &[Vec<OrientedArc>],
    c: &ActiveCrossing,
    s: Smoothing,
    levels: &HashMap<ArcId, i64>,
) -> Vec<Vec<OrientedArc>> {
    if s == Smoothing::Keep {
        return words.to_vec();
    }
    let hits = find_heading(d, words, c.point);
    let [(w1, i), (w2, j)] = hits[..] else {
        unreachable!("an active crossing always has two strands");
    };
    let ((wu, iu), (wl, il)) = if levels[&words[w1][i].arc] > levels[&words[w2][j].arc] {
        ((w1, i), (w2, j))
    } else {
        ((w2, j), (w1, i))
    };
    let now = d.pair_sign(words[wu][iu], words[wl][il]);
    let then = d.pair_sign(c.upper, c.lower);
    let reverse = (s == Smoothing::Reversed) == (now == then);
    let mut out: Vec<Vec<OrientedArc>> = Vec::with_capacity(words.len() + 1);
    if wu == wl {
        for (k, w) in words.iter().enumerate() {
            if k != wu {
                out.push(w.clone());
            }
        }
        out.extend(split_word(&words[wu], iu, il, reverse));
    } else {
        for (k, w) in words.iter().enumerate() {
            if k != wu && k != wl {
                out.push(w.clone());
            }
        }
        out.push(join_words(&words[wu], iu, &words[wl], il, reverse));
    }
    out
}

/// Generic state sum: every crossing in `order` is replaced by the branches
/// `branches(crossing)`, and each final state contributes the product of
/// its branch coefficients times its monomial.
pub fn state_sum<S: Scalar>(
    d: &Diagram,
    st: &Stacked,
    crossings: &[ActiveCrossing],
    branches: &dyn Fn(&ActiveCrossing) -> Vec<(Smoothing, S)>,
    one: S,
    orientation: Orientation,
) -> FormalSum<S> {
    let levels = st.arc_levels();
    let table: Vec<Vec<(Smoothing, S)>> = crossings.iter().map(branches).collect();
    let mut out = FormalSum::zero();
    let mut stack = vec![(0usize, st.words(), one)];
    while let Some((k, words, coeff)) = stack.pop() {
        if k == crossings.len() {
            let m = Monomial::new(words.into_iter().map(Loop::from_word_unchecked).collect());
            out.add_term(m.canonical(orientation), coeff);
            continue;
        }
        for (s, c) in &table[k] {
            if c.is_zero() {
                continue;
            }
            stack.push((
                k + 1,
                smooth(d, &words, &crossings[k], *s, &levels),
                coeff.clone() * c.clone(),
            ));
        }
    }
    out
}

fn oriented_branches<S: Clone>(c: &CrossingCoeffs<S>) -> Vec<(Smoothing, S)> {
    vec![
        (Smoothing::Keep, c.c_virtual.clone()),
        (Smoothing::Oriented, c.c_smooth.clone()),
    ]
}

/// Expectation with caller-supplied coefficients, processing crossings in
/// `order` (a permutation of the active crossings' indices) when given.
pub fn expect_with<S: Scalar>(
    d: &Diagram,
    st: &Stacked,
    coeffs: &dyn Fn(CrossingType) -> CrossingCoeffs<S>,
    one: S,
    order: Option<&[usize]>,
) -> Result<FormalSum<S>> {
    let mut crossings = st.active_crossings(d);
    if let Some(order) = order {
        let mut check: Vec<usize> = order.to_vec();
        check.sort_unstable();
        if check != (0..crossings.len()).collect::<Vec<_>>() {
            return Err(Error::Invalid(vec![format!(
                "resolution order must be a permutation of 0..{}",
                crossings.len()
            )]));
        }
        crossings = order.iter().map(|&k| crossings[k]).collect();
    }
    let over = coeffs(CrossingType::Over);
    let under = coeffs(CrossingType::Under);
    let branches = |c: &ActiveCrossing| match c.ty {
        CrossingType::Over => oriented_branches(&over),
        CrossingType::Under => oriented_branches(&under),
    };
    Ok(state_sum(d, st, &crossings, &branches, one, Orientation::Oriented))
}

fn series_coeffs(group: &GroupSpec, order: usize) -> Result<impl Fn(CrossingType) -> CrossingCoeffs<Series>> {
    let over = crossing_coeffs(group, CrossingType::Over, order)?;
    let under = crossing_coeffs(group, CrossingType::Under, order)?;
    Ok(move |t| match t {
        CrossingType::Over => over.clone(),
        CrossingType::Under => under.clone(),
    })
}

fn closed_coeffs(group: GroupSpec, beta: f64) -> impl Fn(CrossingType) -> CrossingCoeffs<f64> {
    move |t| ClosedForm::new(group, t).numeric(beta)
}

/// `<W_{C_1} ... W_{C_n}>` as a series in `h`.
pub fn expect(d: &Diagram, st: &Stacked, group: &GroupSpec, order: usize) -> Result<FormalSum> {
    expect_with(d, st, &series_coeffs(group, order)?, Series::one(order), None)
}

/// Expectation with the closed-form coefficients at coupling `beta`.
pub fn expect_numeric(d: &Diagram, st: &Stacked, group: &GroupSpec, beta: f64) -> Result<FormalSum<f64>> {
    expect_with(d, st, &closed_coeffs(*group, beta), 1.0, None)
}

/// Bilinear star product with caller-supplied coefficients: `f` is stacked
/// above `g`.
pub fn star_with<S: Scalar>(
    d: &Diagram,
    f: &FormalSum<S>,
    g: &FormalSum<S>,
    coeffs: &dyn Fn(CrossingType) -> CrossingCoeffs<S>,
    one: &S,
) -> Result<FormalSum<S>> {
    let mut out = FormalSum::zero();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let st = Stacked::from_monomials(d, &[(m1, 1), (m2, -1)])?;
            let e = expect_with(d, &st, coeffs, one.clone(), None)?;
            let c12 = c1.clone() * c2.clone();
            for (m, c) in e.terms() {
                out.add_term(m.clone(), c12.clone() * c.clone());
            }
        }
    }
    Ok(out)
}

pub fn star(d: &Diagram, f: &FormalSum, g: &FormalSum, group: &GroupSpec, order: usize) -> Result<FormalSum> {
    let out = star_with(d, f, g, &series_coeffs(group, order)?, &Series::one(order))?;
    Ok(out.map(|s| s.truncate(order)))
}

pub fn star_numeric(
    d: &Diagram,
    f: &FormalSum<f64>,
    g: &FormalSum<f64>,
    group: &GroupSpec,
    beta: f64,
) -> Result<FormalSum<f64>> {
    star_with(d, f, g, &closed_coeffs(*group, beta), &1.0)
}

/// Evaluate series coefficients at `beta`.
pub fn to_numeric(f: &FormalSum, beta: f64) -> FormalSum<f64> {
    f.map(|s| s.eval_at(beta).re)
}

/// `star(f, g) - f g - h {f, g}`, kept to first order in `h`. Zero exactly
/// when the star product reproduces the product and the bracket.
pub fn poisson_limit_check(d: &Diagram, f: &FormalSum, g: &FormalSum, group: &GroupSpec) -> Result<FormalSum> {
    let f1 = f.map(|s| s.truncate(1));
    let g1 = g.map(|s| s.truncate(1));
    let st = star(d, &f1, &g1, group, 1)?;
    let prod = f1.mul(&g1);
    let br = bracket(d, &f1, &g1, group)?.map(|s| s.shift());
    Ok(st.sub(&prod).sub(&br))
}

/// Outcome of an associativity check.
#[derive(Debug, Clone)]
pub struct AssocReport {
    /// `(u*v)*w - u*(v*w)`.
    pub symbolic: FormalSum,
    /// `(u*v)*w` minus the expectation with `u, v, w` at three heights.
    pub three_level: FormalSum,
    /// `(beta, |(u*v)*w - u*(v*w)|)` with closed-form coefficients.
    pub numeric: Vec<(f64, f64)>,
}

impl AssocReport {
    pub fn numeric_max(&self) -> f64 {
        self.numeric.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    pub fn is_exact(&self) -> bool {
        self.symbolic.is_zero() && self.three_level.is_zero()
    }
}

fn three_level(
    d: &Diagram,
    u: &FormalSum,
    v: &FormalSum,
    w: &FormalSum,
    group: &GroupSpec,
    order: usize,
) -> Result<FormalSum> {
    let coeffs = series_coeffs(group, order)?;
    let mut out = FormalSum::zero();
    for (mu, cu) in u.terms() {
        for (mv, cv) in v.terms() {
            for (mw, cw) in w.terms() {
                let st = Stacked::from_monomials(d, &[(mu, 2), (mv, 1), (mw, -1)])?;
                let e = expect_with(d, &st, &coeffs, Series::one(order), None)?;
                let c = &(cu * cv) * cw;
                for (m, k) in e.terms() {
                    out.add_term(m.clone(), &c * k);
                }
            }
        }
    }
    Ok(out.map(|s| s.truncate(order)))
}

#[allow(clippy::too_many_arguments)]
pub fn assoc_check(
    d: &Diagram,
    u: &FormalSum,
    v: &FormalSum,
    w: &FormalSum,
    group: &GroupSpec,
    order: usize,
    betas: &[f64],
    assignment: &HolonomyAssignment,
) -> Result<AssocReport> {
    let left = star(d, &star(d, u, v, group, order)?, w, group, order)?;
    let right = star(d, u, &star(d, v, w, group, order)?, group, order)?;
    let three = three_level(d, u, v, w, group, order)?;
    let mut numeric = Vec::new();
    for &beta in betas {
        let (nu, nv, nw) = (to_numeric(u, beta), to_numeric(v, beta), to_numeric(w, beta));
        let l = star_numeric(d, &star_numeric(d, &nu, &nv, group, beta)?, &nw, group, beta)?;
        let r = star_numeric(d, &nu, &star_numeric(d, &nv, &nw, group, beta)?, group, beta)?;
        let diff: Complex64 = assignment.eval_formal(&l, beta)? - assignment.eval_formal(&r, beta)?;
        numeric.push((beta, diff.norm()));
    }
    Ok(AssocReport {
        symbolic: left.sub(&right),
        three_level: left.sub(&three),
        numeric,
    })
}

/// Resolution into the two unoriented smoothings, in the variables
/// `-W` for every loop. Each crossing of type `t` becomes
/// `-(v_t + s_t)` times the orientation-compatible smoothing plus `-v_t`
/// times the other one.
pub fn unoriented_kauffman_resolution(d: &Diagram, st: &Stacked, group: &GroupSpec, order: usize) -> Result<FormalSum> {
    if !group.kind.is_rank_two() {
        return Err(Error::UnsupportedGroup(format!(
            "{} has oriented Wilson loops; the unoriented resolution needs a rank-two group",
            group.label()
        )));
    }
    let over = crossing_coeffs(group, CrossingType::Over, order)?;
    let under = crossing_coeffs(group, CrossingType::Under, order)?;
    let split = |c: &CrossingCoeffs<Series>| {
        vec![
            (Smoothing::Oriented, -(&c.c_virtual + &c.c_smooth)),
            (Smoothing::Reversed, -c.c_virtual.clone()),
        ]
    };
    let branches = |c: &ActiveCrossing| match c.ty {
        CrossingType::Over => split(&over),
        CrossingType::Under => split(&under),
    };
    let crossings = st.active_crossings(d);
    Ok(state_sum(
        d,
        st,
        &crossings,
        &branches,
        Series::one(order),
        Orientation::Unoriented,
    ))
}

/// Evaluate a sum written in the `-W` variables.
pub fn eval_normalized(a: &HolonomyAssignment, f: &FormalSum, beta: f64) -> Result<Complex64> {
    f.terms().try_fold(Complex64::new(0.0, 0.0), |acc, (m, c)| {
        let sign = if m.degree() % 2 == 0 { 1.0 } else { -1.0 };
        Ok(acc + c.eval_at(beta) * a.eval_monomial(m)? * sign)
    })
}
