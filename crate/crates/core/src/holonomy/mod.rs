//! Matrix holonomy oracle: random group elements on arcs, Wilson-loop
//! evaluation, and the trace identities of the Lie algebra bases.

mod lattice;
mod lie;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::coeff::{GroupKind, GroupSpec, Series};
use crate::diagram::{ArcId, Diagram, FormalSum, Loop, Monomial};
use crate::error::{Error, Result};

pub use lattice::{lattice_derivative_check, Lattice, Probe};
pub use lie::{projection_pi, verify_gram_identity, LieBasis};

pub type Mat = DMatrix<Complex64>;

/// Tolerance for group membership of assignment matrices.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn gaussian(n: usize, rng: &mut impl Rng, complex: bool) -> Mat {
    Mat::from_fn(n, n, |_, _| {
        let re = normal(rng);
        let im = if complex { normal(rng) } else { 0.0 };
        c(re, im)
    })
}

/// Unitary from the QR factorisation of a complex Gaussian matrix, with the
/// phases of `R`'s diagonal moved into `Q` so the law is Haar.
fn haar_unitary(n: usize, rng: &mut impl Rng) -> Mat {
    let (mut q, r) = gaussian(n, rng, true).qr().unpack();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let col = q.column(j) * (d / d.norm());
            q.set_column(j, &col);
        }
    }
    q
}

/// A random element of the group.
pub fn sample(group: &GroupSpec, rng: &mut impl Rng) -> Mat {
    let n = group.n;
    match group.kind {
        GroupKind::Su2 => {
            let q: [f64; 4] = std::array::from_fn(|_| normal(rng));
            let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            let [a, b, cc, d] = q.map(|x| x / norm);
            Mat::from_row_slice(2, 2, &[c(a, b), c(cc, d), c(-cc, d), c(a, -b)])
        }
        GroupKind::Sl2r => {
            let mut m = gaussian(2, rng, false);
            let det = m.determinant().re;
            if det < 0.0 {
                m.column_mut(0).neg_mut();
            }
            let s = det.abs().sqrt();
            m / c(s, 0.0)
        }
        GroupKind::Sl2c => {
            let m = gaussian(2, rng, true);
            let s = m.determinant().sqrt();
            m / s
        }
        GroupKind::Un => haar_unitary(n, rng),
        GroupKind::Gln => {
            let u = haar_unitary(n, rng);
            let v = haar_unitary(n, rng);
            let d = Mat::from_fn(n, n, |i, j| {
                if i == j {
                    c((0.5 * normal(rng)).exp(), 0.0)
                } else {
                    c(0.0, 0.0)
                }
            });
            u * d * v
        }
    }
}

/// Check that `m` lies in the group up to [`MEMBERSHIP_TOL`].
pub fn check_membership(group: &GroupSpec, m: &Mat) -> Result<()> {
    let n = group.n;
    let fail = |detail: String| Error::NotInGroup {
        group: group.label(),
        detail,
    };
    if m.nrows() != n || m.ncols() != n {
        return Err(fail(format!("expected {n}x{n}, got {}x{}", m.nrows(), m.ncols())));
    }
    let id = Mat::identity(n, n);
    let unitary = || (m.adjoint() * m - &id).norm();
    let det = m.determinant();
    match group.kind {
        GroupKind::Su2 | GroupKind::Un => {
            let r = unitary();
            if r > MEMBERSHIP_TOL {
                return Err(fail(format!("|U*U - I| = {r:e}")));
            }
        }
        _ => {}
    }
    match group.kind {
        GroupKind::Su2 | GroupKind::Sl2r | GroupKind::Sl2c => {
            let r = (det - c(1.0, 0.0)).norm();
            if r > MEMBERSHIP_TOL {
                return Err(fail(format!("|det - 1| = {r:e}")));
            }
        }
        GroupKind::Gln | GroupKind::Un => {
            if det.norm() < MEMBERSHIP_TOL {
                return Err(fail("singular".into()));
            }
        }
    }
    if group.kind == GroupKind::Sl2r {
        let im = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if im > MEMBERSHIP_TOL {
            return Err(fail(format!("imaginary part {im:e}")));
        }
    }
    Ok(())
}

/// Coefficients that can be turned into numbers at a given coupling.
pub trait NumericCoeff {
    fn value_at(&self, beta: f64) -> Complex64;
}

impl NumericCoeff for Series {
    fn value_at(&self, beta: f64) -> Complex64 {
        self.eval_at(beta)
    }
}

impl NumericCoeff for f64 {
    fn value_at(&self, _beta: f64) -> Complex64 {
        c(*self, 0.0)
    }
}

/// Arc matrices for one diagram, together with their inverses.
#[derive(Debug, Clone)]
pub struct HolonomyAssignment {
    group: GroupSpec,
    arcs: BTreeMap<ArcId, (Mat, Mat)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AssignmentJson {
    group: GroupKind,
    n: usize,
    arcs: BTreeMap<String, Vec<[f64; 2]>>,
}

impl HolonomyAssignment {
    pub fn new(group: GroupSpec) -> Self {
        HolonomyAssignment {
            group,
            arcs: BTreeMap::new(),
        }
    }

    /// Independent random matrices on every arc of `d`.
    pub fn random(d: &Diagram, group: GroupSpec, rng: &mut impl Rng) -> Self {
        let mut a = Self::new(group);
        for arc in d.arcs() {
            let m = sample(&group, rng);
            let inv = m.clone().try_inverse().expect("sampled matrices are invertible");
            a.arcs.insert(arc, (m, inv));
        }
        a
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Set the matrix on one arc after checking group membership.
    pub fn insert(&mut self, arc: ArcId, m: Mat) -> Result<()> {
        check_membership(&self.group, &m)?;
        let inv = m.clone().try_inverse().ok_or_else(|| Error::NotInGroup {
            group: self.group.label(),
            detail: "singular".into(),
        })?;
        self.arcs.insert(arc, (m, inv));
        Ok(())
    }

    pub fn get(&self, arc: ArcId) -> Option<&Mat> {
        self.arcs.get(&arc).map(|(m, _)| m)
    }

    fn oriented(&self, arc: ArcId, reversed: bool) -> Result<&Mat> {
        let (m, inv) = self.arcs.get(&arc).ok_or_else(|| Error::MissingArc(arc.to_string()))?;
        Ok(if reversed { inv } else { m })
    }

    /// Ordered product along the loop word starting at position `start`.
    pub fn based_holonomy(&self, l: &Loop, start: usize) -> Result<Mat> {
        let n = self.group.n;
        let w = l.word();
        let mut out = Mat::identity(n, n);
        for k in 0..w.len() {
            let oa = w[(start + k) % w.len()];
            out *= self.oriented(oa.arc, oa.reversed)?;
        }
        Ok(out)
    }

    pub fn holonomy(&self, l: &Loop) -> Result<Mat> {
        self.based_holonomy(l, 0)
    }

    pub fn eval_wilson(&self, l: &Loop) -> Result<Complex64> {
        Ok(self.holonomy(l)?.trace())
    }

    pub fn eval_monomial(&self, m: &Monomial) -> Result<Complex64> {
        m.loops()
            .iter()
            .try_fold(c(1.0, 0.0), |acc, l| Ok(acc * self.eval_wilson(l)?))
    }

    /// `sum coeff(beta) * prod W`.
    pub fn eval_formal<S>(&self, s: &FormalSum<S>, beta: f64) -> Result<Complex64>
    where
        S: crate::coeff::Scalar + NumericCoeff,
    {
        s.terms().try_fold(c(0.0, 0.0), |acc, (m, k)| {
            Ok(acc + k.value_at(beta) * self.eval_monomial(m)?)
        })
    }

    pub fn to_json(&self, d: &Diagram) -> String {
        let arcs = self
            .arcs
            .iter()
            .map(|(arc, (m, _))| {
                let n = m.nrows();
                let entries = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| [m[(i, j)].re, m[(i, j)].im])
                    .collect();
                (d.arc_name(*arc), entries)
            })
            .collect();
        let j = AssignmentJson {
            group: self.group.kind,
            n: self.group.n,
            arcs,
        };
        serde_json::to_string_pretty(&j).expect("assignments serialize")
    }

    pub fn from_json(d: &Diagram, text: &str) -> Result<Self> {
        let j: AssignmentJson = serde_json::from_str(text)?;
        let group = GroupSpec::new(j.group, j.n)?;
        let mut a = Self::new(group);
        for (name, entries) in j.arcs {
            let arc = d.arc_by_name(&name)?;
            if entries.len() != group.n * group.n {
                return Err(Error::Json(format!(
                    "arc `{name}` has {} entries, expected {}",
                    entries.len(),
                    group.n * group.n
                )));
            }
            let vals: Vec<Complex64> = entries.iter().map(|[re, im]| c(*re, *im)).collect();
            a.insert(arc, Mat::from_row_slice(group.n, group.n, &vals))?;
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::reverse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    fn all_groups() -> Vec<GroupSpec> {
        vec![
            GroupSpec::su2(),
            GroupSpec::sl2r(),
            GroupSpec::sl2c(),
            GroupSpec::gln(3),
            GroupSpec::un(3),
        ]
    }

    #[test]
    fn samples_are_in_group() {
        let mut r = rng();
        for g in all_groups() {
            for _ in 0..50 {
                let m = sample(&g, &mut r);
                check_membership(&g, &m).unwrap_or_else(|e| panic!("{}: {e}", g.label()));
            }
        }
        let u = sample(&GroupSpec::su2(), &mut r);
        assert!((u.determinant() - c(1.0, 0.0)).norm() < 1e-12);
        assert!((u.adjoint() * &u - Mat::identity(2, 2)).norm() < 1e-12);
        let s = sample(&GroupSpec::sl2r(), &mut r);
        assert!(s.iter().all(|z| z.im == 0.0));
        assert!((s.determinant().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn samplers_are_deterministic() {
        for g in all_groups() {
            let a = sample(&g, &mut rng());
            let b = sample(&g, &mut rng());
            assert_eq!(a, b);
        }
    }

    fn diagram() -> Diagram {
        Diagram::from_spec(&[("a", 1), ("b", -1)], &[("C", 1, &["a", "b"]), ("D", 0, &["b", "a"])]).unwrap()
    }

    #[test]
    fn identity_holonomy_gives_n() {
        let d = diagram();
        let mut a = HolonomyAssignment::new(GroupSpec::gln(3));
        for arc in d.arcs() {
            a.insert(arc, Mat::identity(3, 3)).unwrap();
        }
        assert_eq!(a.eval_wilson(&d.curve_loop(0)).unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn single_arc_loop_is_trace() {
        let d = Diagram::from_spec(&[], &[("C", 0, &[])]).unwrap();
        let a = HolonomyAssignment::random(&d, GroupSpec::gln(2), &mut rng());
        let u = a.get(d.arcs().next().unwrap()).unwrap();
        assert_eq!(a.eval_wilson(&d.curve_loop(0)).unwrap(), u.trace());
    }

    #[test]
    fn rotation_and_reversal() {
        let d = diagram();
        let l = d.curve_loop(0);
        let su2 = HolonomyAssignment::random(&d, GroupSpec::su2(), &mut rng());
        let w0 = su2.holonomy(&l).unwrap().trace();
        let w1 = su2.based_holonomy(&l, 1).unwrap().trace();
        assert!((w0 - w1).norm() < 1e-13);
        let wr = su2.eval_wilson(&reverse(&l)).unwrap();
        assert!((w0 - wr).norm() < 1e-12);

        let gl = HolonomyAssignment::random(&d, GroupSpec::gln(3), &mut rng());
        let diff = gl.eval_wilson(&l).unwrap() - gl.eval_wilson(&reverse(&l)).unwrap();
        assert!(diff.norm() > 1e-6);
    }

    #[test]
    fn concat_evaluates_to_based_product() {
        let d = Diagram::from_spec(&[("a", 1)], &[("C", 1, &["a"]), ("D", 0, &["a"])]).unwrap();
        let a = HolonomyAssignment::random(&d, GroupSpec::gln(3), &mut rng());
        let (x, y) = (d.curve_loop(0), d.curve_loop(1));
        let xy = crate::diagram::concat_at(&d, &x, &y, 0).unwrap();
        let direct = (a.holonomy(&x).unwrap() * a.holonomy(&y).unwrap()).trace();
        assert!((a.eval_wilson(&xy).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn formal_sums() {
        let d = diagram();
        let a = HolonomyAssignment::random(&d, GroupSpec::sl2c(), &mut rng());
        let empty: FormalSum<f64> = FormalSum::zero();
        assert_eq!(a.eval_formal(&empty, 0.3).unwrap(), c(0.0, 0.0));
        let m = Monomial::new(vec![d.curve_loop(0), d.curve_loop(1)]);
        let one = FormalSum::term(m.clone(), 1.0);
        let prod = a.eval_wilson(&d.curve_loop(0)).unwrap() * a.eval_wilson(&d.curve_loop(1)).unwrap();
        assert!((a.eval_formal(&one, 0.3).unwrap() - prod).norm() < 1e-12);
        let mut s = FormalSum::term(m, 2.5);
        s.add_term(Monomial::single(d.curve_loop(0)), -0.75);
        let lin = a.eval_formal(&s.scale(&3.0), 0.1).unwrap() - a.eval_formal(&s, 0.1).unwrap() * 3.0;
        assert!(lin.norm() < 1e-12);
    }

    #[test]
    fn missing_arc() {
        let d = diagram();
        let a = HolonomyAssignment::new(GroupSpec::su2());
        assert!(matches!(a.eval_wilson(&d.curve_loop(0)), Err(Error::MissingArc(_))));
    }

    #[test]
    fn json_round_trip() {
        let d = diagram();
        let a = HolonomyAssignment::random(&d, GroupSpec::su2(), &mut rng());
        let text = a.to_json(&d);
        assert!(text.contains("\"C.0\""));
        let b = HolonomyAssignment::from_json(&d, &text).unwrap();
        let l = d.curve_loop(1);
        assert!((a.eval_wilson(&l).unwrap() - b.eval_wilson(&l).unwrap()).norm() < 1e-14);
        let bad = r#"{"group": "su2", "n": 2, "arcs": {"C.0": [[2,0],[0,0],[0,0],[2,0]]}}"#;
        assert!(matches!(
            HolonomyAssignment::from_json(&d, bad),
            Err(Error::NotInGroup { .. })
        ));
    }
}
