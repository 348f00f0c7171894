//! Oriented closed curves with transversal, signed crossings.
//!
//! A curve is a cyclic list of passes through crossing points. Consecutive
//! passes bound an arc: arc `j` of a curve with passes `p_0 .. p_{k-1}` runs
//! from `p_j` to `p_{j+1 mod k}`. A curve without passes is a single free arc.
//! The surface itself is never stored; only the crossing combinatorics and the
//! signs matter.
//!
//! The sign of a point is `sgn omega(v_1, v_2)` where `v_1` is the tangent of
//! the first listed pass through it and `v_2` that of the second.

mod json;
mod loops;
mod text;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use json::{FormalSumJson, TermJson};
pub use loops::{canonical_rotation, FormalSum, Loop, Monomial, Orientation};
pub use text::{parse_diagram, render_diagram};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingPoint {
    pub id: String,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: String,
    /// Point indices, in traversal order.
    pub passes: Vec<usize>,
    pub level: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId {
    pub curve: u32,
    pub index: u32,
}

impl ArcId {
    pub fn new(curve: usize, index: usize) -> Self {
        ArcId {
            curve: curve as u32,
            index: index as u32,
        }
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}.{}", self.curve, self.index)
    }
}

/// An arc together with the direction it is traversed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedArc {
    pub arc: ArcId,
    pub reversed: bool,
}

impl OrientedArc {
    pub fn forward(arc: ArcId) -> Self {
        OrientedArc { arc, reversed: false }
    }

    pub fn flipped(self) -> Self {
        OrientedArc {
            arc: self.arc,
            reversed: !self.reversed,
        }
    }

    pub fn direction(self) -> i8 {
        if self.reversed {
            -1
        } else {
            1
        }
    }
}

/// One of the two passes through a crossing point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Strand {
    pub point: usize,
    /// 0 for the first listed pass, 1 for the second.
    pub slot: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagram {
    points: Vec<CrossingPoint>,
    curves: Vec<Curve>,
    pass_slots: Vec<Vec<u8>>,
}

impl Diagram {
    /// Build a diagram without checking it; see [`Diagram::validate`].
    pub fn new(points: Vec<CrossingPoint>, curves: Vec<Curve>) -> Self {
        let mut seen = HashMap::new();
        let pass_slots = curves
            .iter()
            .map(|c| {
                c.passes
                    .iter()
                    .map(|&p| {
                        let n = seen.entry(p).or_insert(0u8);
                        let slot = (*n).min(1);
                        *n = n.saturating_add(1);
                        slot
                    })
                    .collect()
            })
            .collect();
        Diagram {
            points,
            curves,
            pass_slots,
        }
    }

    /// Build and validate.
    pub fn validated(points: Vec<CrossingPoint>, curves: Vec<Curve>) -> Result<Self> {
        let d = Diagram::new(points, curves);
        d.validate().map_err(Error::Invalid)?;
        Ok(d)
    }

    /// Convenience constructor from names: `points` are `(id, sign)`,
    /// `curves` are `(id, level, passes)`.
    pub fn from_spec(points: &[(&str, i8)], curves: &[(&str, i64, &[&str])]) -> Result<Self> {
        let pts: Vec<CrossingPoint> = points
            .iter()
            .map(|(id, sign)| CrossingPoint {
                id: id.to_string(),
                sign: *sign,
            })
            .collect();
        let index: HashMap<&str, usize> = points.iter().enumerate().map(|(i, (id, _))| (*id, i)).collect();
        let mut cs = Vec::new();
        for (id, level, passes) in curves {
            let passes = passes
                .iter()
                .map(|p| index.get(p).copied().ok_or_else(|| Error::UnknownPoint(p.to_string())))
                .collect::<Result<Vec<_>>>()?;
            cs.push(Curve {
                id: id.to_string(),
                passes,
                level: *level,
            });
        }
        Diagram::validated(pts, cs)
    }

    pub fn points(&self) -> &[CrossingPoint] {
        &self.points
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub fn curve_index(&self, id: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.id == id)
    }

    pub fn sign(&self, point: usize) -> i8 {
        self.points[point].sign
    }

    /// Check the two-pass rule, signs and identifier uniqueness.
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let mut errors = Vec::new();
        let mut seen = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if let Some(j) = seen.insert(p.id.as_str(), i) {
                errors.push(format!(
                    "duplicate point `{}` (declarations {} and {})",
                    p.id,
                    j + 1,
                    i + 1
                ));
            }
            if p.sign != 1 && p.sign != -1 {
                errors.push(format!("point `{}` has sign {}, expected +1 or -1", p.id, p.sign));
            }
        }
        let mut seen = HashMap::new();
        for c in &self.curves {
            if seen.insert(c.id.as_str(), ()).is_some() {
                errors.push(format!("duplicate curve `{}`", c.id));
            }
            if c.id.contains('.') {
                errors.push(format!("curve id `{}` may not contain `.`", c.id));
            }
        }
        let mut visits = vec![0usize; self.points.len()];
        for c in &self.curves {
            for &p in &c.passes {
                match visits.get_mut(p) {
                    Some(v) => *v += 1,
                    None => errors.push(format!("curve `{}` references unknown point #{p}", c.id)),
                }
            }
        }
        for (p, &v) in self.points.iter().zip(&visits) {
            match v {
                2 => {}
                0 | 1 => errors.push(format!("point `{}` is passed {v} time(s), expected 2", p.id)),
                _ => errors.push(format!("point `{}` is passed {v} times: triple point", p.id)),
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    pub fn arc_count(&self, curve: usize) -> usize {
        self.curves[curve].passes.len().max(1)
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.curves.len()).flat_map(move |c| (0..self.arc_count(c)).map(move |j| ArcId::new(c, j)))
    }

    pub fn contains_arc(&self, arc: ArcId) -> bool {
        (arc.curve as usize) < self.curves.len() && (arc.index as usize) < self.arc_count(arc.curve as usize)
    }

    pub fn arc_name(&self, arc: ArcId) -> String {
        format!("{}.{}", self.curves[arc.curve as usize].id, arc.index)
    }

    pub fn arc_by_name(&self, name: &str) -> Result<ArcId> {
        let bad = || Error::UnknownArc(name.to_string());
        let (c, j) = name.rsplit_once('.').ok_or_else(bad)?;
        let c = self.curve_index(c).ok_or_else(bad)?;
        let j: usize = j.parse().map_err(|_| bad())?;
        let arc = ArcId::new(c, j);
        if self.contains_arc(arc) {
            Ok(arc)
        } else {
            Err(bad())
        }
    }

    fn pass_point(&self, curve: usize, pass: usize) -> usize {
        self.curves[curve].passes[pass]
    }

    /// Point at which the oriented arc ends (`None` for a free loop).
    pub fn head(&self, oa: OrientedArc) -> Option<usize> {
        self.head_pass(oa).map(|(c, k)| self.pass_point(c, k))
    }

    /// Point at which the oriented arc starts.
    pub fn tail(&self, oa: OrientedArc) -> Option<usize> {
        self.head(oa.flipped())
    }

    /// `(curve, pass index)` of the pass the oriented arc runs into.
    fn head_pass(&self, oa: OrientedArc) -> Option<(usize, usize)> {
        let c = oa.arc.curve as usize;
        let k = self.curves[c].passes.len();
        if k == 0 {
            return None;
        }
        let j = oa.arc.index as usize;
        Some((c, if oa.reversed { j } else { (j + 1) % k }))
    }

    /// The strand an oriented arc runs into.
    pub fn head_strand(&self, oa: OrientedArc) -> Option<Strand> {
        let (c, k) = self.head_pass(oa)?;
        let point = self.pass_point(c, k);
        Some(Strand {
            point,
            slot: self.slot_of(c, k),
        })
    }

    /// Whether the given pass is the first or second listed through its point.
    fn slot_of(&self, curve: usize, pass: usize) -> u8 {
        self.pass_slots[curve][pass]
    }

    /// Intersection sign of the ordered pair of strands `(a, b)` at a point,
    /// taking the traversal directions into account.
    pub fn pair_sign(&self, a: OrientedArc, b: OrientedArc) -> Option<i8> {
        let sa = self.head_strand(a)?;
        let sb = self.head_strand(b)?;
        if sa.point != sb.point || sa.slot == sb.slot {
            return None;
        }
        let order = if sa.slot == 0 { 1 } else { -1 };
        Some(self.sign(sa.point) * order * a.direction() * b.direction())
    }

    /// The loop traversing curve `c` in its own direction.
    pub fn curve_loop(&self, c: usize) -> Loop {
        Loop::from_word_unchecked(
            (0..self.arc_count(c))
                .map(|j| OrientedArc::forward(ArcId::new(c, j)))
                .collect(),
        )
    }

    pub fn curve_loop_by_id(&self, id: &str) -> Result<Loop> {
        let c = self.curve_index(id).ok_or_else(|| Error::UnknownArc(id.to_string()))?;
        Ok(self.curve_loop(c))
    }

    /// Distinct levels present, highest first.
    pub fn levels(&self) -> Vec<i64> {
        let mut ls: Vec<i64> = self.curves.iter().map(|c| c.level).collect();
        ls.sort_unstable_by(|a, b| b.cmp(a));
        ls.dedup();
        ls
    }

    /// Product of the curves at the given level.
    pub fn monomial_at_level(&self, level: i64) -> Monomial {
        Monomial::new(
            self.curves
                .iter()
                .enumerate()
                .filter(|(_, c)| c.level == level)
                .map(|(i, _)| self.curve_loop(i))
                .collect(),
        )
    }

    /// All curves with their levels.
    pub fn stacked_loops(&self) -> Vec<(Loop, i64)> {
        self.curves
            .iter()
            .enumerate()
            .map(|(i, c)| (self.curve_loop(i), c.level))
            .collect()
    }
}

/// Concatenate `c` and `c2` at the point `point`, which `c` passes once and
/// `c2` passes once.
///
/// The result runs along `c` from the point back to it, then along `c2`.
pub fn concat_at(d: &Diagram, c: &Loop, c2: &Loop, point: usize) -> Result<Loop> {
    loops::concat_at(d, c, c2, point, false)
}

/// Like [`concat_at`] but traverses `c2` backwards.
pub fn concat_reversed_at(d: &Diagram, c: &Loop, c2: &Loop, point: usize) -> Result<Loop> {
    loops::concat_at(d, c, c2, point, true)
}

pub fn reverse(l: &Loop) -> Loop {
    l.reversed()
}

pub fn canonicalize(m: &Monomial, orientation: Orientation) -> Monomial {
    m.canonical(orientation)
}

pub(crate) use loops::{find_heading, join_words, split_word};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_crossings_validate() {
        let d = Diagram::from_spec(&[("a", 1), ("b", -1)], &[("C", 0, &["a", "b", "a", "b"])]).unwrap();
        assert_eq!(d.arc_count(0), 4);
    }

    #[test]
    fn triple_point_rejected() {
        let d = Diagram::new(
            vec![CrossingPoint {
                id: "a".into(),
                sign: 1,
            }],
            vec![
                Curve {
                    id: "C".into(),
                    passes: vec![0, 0],
                    level: 0,
                },
                Curve {
                    id: "D".into(),
                    passes: vec![0],
                    level: 0,
                },
            ],
        );
        let errs = d.validate().unwrap_err();
        assert!(errs.iter().any(|e| e.contains("triple point")), "{errs:?}");
    }

    #[test]
    fn missing_pass_rejected() {
        let d = Diagram::new(
            vec![CrossingPoint {
                id: "a".into(),
                sign: 1,
            }],
            vec![Curve {
                id: "C".into(),
                passes: vec![0],
                level: 0,
            }],
        );
        assert!(d.validate().is_err());
    }

    #[test]
    fn empty_diagram_is_valid() {
        assert!(Diagram::default().validate().is_ok());
    }

    #[test]
    fn arc_geometry() {
        let d = Diagram::from_spec(&[("a", 1), ("b", 1)], &[("C", 1, &["a", "b"]), ("D", 0, &["b", "a"])]).unwrap();
        let c0 = OrientedArc::forward(ArcId::new(0, 0));
        assert_eq!(d.tail(c0), Some(0));
        assert_eq!(d.head(c0), Some(1));
        assert_eq!(d.head(c0.flipped()), Some(0));
        assert_eq!(d.head_strand(c0), Some(Strand { point: 1, slot: 0 }));
        let d1 = OrientedArc::forward(ArcId::new(1, 1));
        // D.1 runs from a into b, and C lists b first
        assert_eq!(d.head_strand(d1), Some(Strand { point: 1, slot: 1 }));
        assert_eq!(d.arc_name(ArcId::new(1, 1)), "D.1");
        assert_eq!(d.arc_by_name("D.1").unwrap(), ArcId::new(1, 1));
        assert!(d.arc_by_name("D.2").is_err());
    }

    #[test]
    fn pair_sign_flips_with_order_and_direction() {
        let d = Diagram::from_spec(&[("a", 1)], &[("C", 1, &["a"]), ("D", 0, &["a"])]).unwrap();
        let c = OrientedArc::forward(ArcId::new(0, 0));
        let e = OrientedArc::forward(ArcId::new(1, 0));
        assert_eq!(d.pair_sign(c, e), Some(1));
        assert_eq!(d.pair_sign(e, c), Some(-1));
        assert_eq!(d.pair_sign(c, e.flipped()), Some(-1));
        assert_eq!(d.pair_sign(c, c), None);
    }
}
