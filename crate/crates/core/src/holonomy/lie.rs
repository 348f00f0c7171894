use num_complex::Complex64;

use super::{c, Mat};
use crate::coeff::{GroupKind, GroupSpec};
use crate::error::{Error, Result};

/// A basis of the Lie algebra with its trace-form Gram matrix.
#[derive(Debug, Clone)]
pub struct LieBasis {
    elements: Vec<Mat>,
    gram: Mat,
    gram_inv: Mat,
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = c(1.0, 0.0);
    m
}

impl LieBasis {
    pub fn from_elements(elements: Vec<Mat>) -> Result<Self> {
        let k = elements.len();
        let gram = Mat::from_fn(k, k, |a, b| (&elements[a] * &elements[b]).trace());
        let gram_inv = gram.clone().try_inverse().ok_or(Error::SingularGram)?;
        let check = (&gram_inv * &gram - Mat::identity(k, k)).norm();
        if !check.is_finite() || check > 1e-12 * (k as f64) {
            return Err(Error::SingularGram);
        }
        Ok(LieBasis {
            elements,
            gram,
            gram_inv,
        })
    }

    /// gl(n): `E_ij`; u(n): `i E_jj`, `E_jk - E_kj`, `i (E_jk + E_kj)`;
    /// su(2): `i sigma`; sl(2): `h, e, f`.
    pub fn standard(group: &GroupSpec) -> Result<Self> {
        let n = group.n;
        let i = c(0.0, 1.0);
        let elements = match group.kind {
            GroupKind::Gln => (0..n).flat_map(|a| (0..n).map(move |b| unit(n, a, b))).collect(),
            GroupKind::Un => {
                let mut v: Vec<Mat> = (0..n).map(|a| unit(n, a, a) * i).collect();
                for a in 0..n {
                    for b in a + 1..n {
                        v.push(unit(n, a, b) - unit(n, b, a));
                        v.push((unit(n, a, b) + unit(n, b, a)) * i);
                    }
                }
                v
            }
            GroupKind::Su2 => {
                let sx = unit(2, 0, 1) + unit(2, 1, 0);
                let sy = (unit(2, 1, 0) - unit(2, 0, 1)) * i;
                let sz = unit(2, 0, 0) - unit(2, 1, 1);
                vec![sx * i, sy * i, sz * i]
            }
            GroupKind::Sl2r | GroupKind::Sl2c => {
                vec![unit(2, 0, 0) - unit(2, 1, 1), unit(2, 0, 1), unit(2, 1, 0)]
            }
        };
        Self::from_elements(elements)
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Mat {
        &self.gram_inv
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// `sum_{ab} g^{ab} tr(U e_a) tr(V e_b)`.
    pub fn contract(&self, u: &Mat, v: &Mat) -> Complex64 {
        let tu: Vec<Complex64> = self.elements.iter().map(|e| (u * e).trace()).collect();
        let tv: Vec<Complex64> = self.elements.iter().map(|e| (v * e).trace()).collect();
        let mut s = c(0.0, 0.0);
        for (a, x) in tu.iter().enumerate() {
            for (b, y) in tv.iter().enumerate() {
                s += self.gram_inv[(a, b)] * x * y;
            }
        }
        s
    }
}

/// Projection of a group element to the Lie algebra through the trace form:
/// the identity for GL(n)/U(n), `(U - U^-1)/2` for SU(2), the trace-free
/// part for SL(2).
pub fn projection_pi(group: &GroupSpec, u: &Mat) -> Result<Mat> {
    match group.kind {
        GroupKind::Gln | GroupKind::Un => Ok(u.clone()),
        GroupKind::Su2 => {
            let inv = u.clone().try_inverse().ok_or_else(|| Error::NotInGroup {
                group: group.label(),
                detail: "singular".into(),
            })?;
            Ok((u - inv) * c(0.5, 0.0))
        }
        GroupKind::Sl2r | GroupKind::Sl2c => {
            let n = u.nrows();
            Ok(u - Mat::identity(n, n) * (u.trace() * 0.5))
        }
    }
}

/// `|sum g^{ab} tr(U e_a) tr(V e_b) - tr(pi(U) pi(V))|`.
pub fn verify_gram_identity(group: &GroupSpec, basis: &LieBasis, u: &Mat, v: &Mat) -> Result<f64> {
    let lhs = basis.contract(u, v);
    let rhs = (projection_pi(group, u)? * projection_pi(group, v)?).trace();
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gram_inverse() {
        for g in [GroupSpec::gln(3), GroupSpec::un(3), GroupSpec::su2(), GroupSpec::sl2r()] {
            let b = LieBasis::standard(&g).unwrap();
            let k = b.dim();
            assert!((b.gram_inv() * b.gram() - Mat::identity(k, k)).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_gram_rejected() {
        let e = unit(2, 0, 1);
        assert_eq!(
            LieBasis::from_elements(vec![e.clone(), e]).unwrap_err(),
            Error::SingularGram
        );
    }

    #[test]
    fn projections() {
        let mut r = ChaCha8Rng::seed_from_u64(3);
        let gl = GroupSpec::gln(2);
        let u = sample(&gl, &mut r);
        assert_eq!(projection_pi(&gl, &u).unwrap(), u);
        let id = Mat::identity(2, 2);
        assert!(projection_pi(&GroupSpec::su2(), &id).unwrap().norm() < 1e-15);
        let sl = GroupSpec::sl2r();
        let (u, v) = (sample(&sl, &mut r), sample(&sl, &mut r));
        let lhs = (projection_pi(&sl, &u).unwrap() * projection_pi(&sl, &v).unwrap()).trace();
        let rhs = (&u * &v).trace() - u.trace() * v.trace() * 0.5;
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn gram_identity_per_group() {
        let mut r = ChaCha8Rng::seed_from_u64(11);
        for g in [
            GroupSpec::gln(2),
            GroupSpec::gln(4),
            GroupSpec::un(3),
            GroupSpec::su2(),
            GroupSpec::sl2r(),
            GroupSpec::sl2c(),
        ] {
            let b = LieBasis::standard(&g).unwrap();
            for _ in 0..20 {
                let (u, v) = (sample(&g, &mut r), sample(&g, &mut r));
                let res = verify_gram_identity(&g, &b, &u, &v).unwrap();
                assert!(res < 1e-10, "{}: {res}", g.label());
            }
        }
        let su2 = GroupSpec::su2();
        let b = LieBasis::standard(&su2).unwrap();
        let id = Mat::identity(2, 2);
        assert!(b.contract(&id, &id).norm() < 1e-15);
    }

    #[test]
    fn basis_independent() {
        let mut r = ChaCha8Rng::seed_from_u64(5);
        let g = GroupSpec::sl2r();
        let std = LieBasis::standard(&g).unwrap();
        let e = std.elements();
        let other = LieBasis::from_elements(vec![&e[0] + &e[1], &e[1] - &e[2] * c(2.0, 0.0), &e[0] - &e[2]]).unwrap();
        let (u, v) = (sample(&g, &mut r), sample(&g, &mut r));
        assert!((std.contract(&u, &v) - other.contract(&u, &v)).norm() < 1e-10);
    }
}
