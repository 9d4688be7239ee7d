//! Affine arithmetic on `E: y^2 = x^3 + x` over `F_q` and `F_{q^2}`.

use crate::algebra::Fp;

use super::fq2::Fq2;
use super::CurveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Fp, y: Fp },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(Fp, Fp)> {
        match *self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }
}

/// A point of `E(F_{q^2})`; produced by the distortion map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fq2Point {
    Infinity,
    Affine { x: Fq2, y: Fq2 },
}

/// The curve `y^2 = x^3 + x` over `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    q: u64,
}

impl Curve {
    pub fn new(q: u64) -> Self {
        Self { q }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn fq(&self, v: u64) -> Fp {
        Fp::new(v, self.q)
    }

    /// `x^3 + x`.
    pub fn rhs(&self, x: Fp) -> Fp {
        x * x * x + x
    }

    pub fn point(&self, x: u64, y: u64) -> Result<CurvePoint, CurveError> {
        let p = CurvePoint::Affine { x: self.fq(x), y: self.fq(y) };
        self.check(&p)?;
        Ok(p)
    }

    pub fn is_on_curve(&self, p: &CurvePoint) -> bool {
        match *p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => x.modulus() == self.q && y.modulus() == self.q && y * y == self.rhs(x),
        }
    }

    pub fn check(&self, p: &CurvePoint) -> Result<(), CurveError> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(CurveError::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match *p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x, y: -y },
        }
    }

    pub fn add(&self, a: &CurvePoint, b: &CurvePoint) -> CurvePoint {
        let (x1, y1) = match a.coords() {
            None => return *b,
            Some(c) => c,
        };
        let (x2, y2) = match b.coords() {
            None => return *a,
            Some(c) => c,
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return CurvePoint::Infinity;
            }
            // tangent slope (3x^2 + 1) / 2y
            (self.fq(3) * x1 * x1 + self.fq(1)) * (self.fq(2) * y1).inv().expect("y != 0")
        } else {
            (y2 - y1) * (x2 - x1).inv().expect("x1 != x2")
        };
        let x3 = lambda * lambda - x1 - x2;
        let y3 = lambda * (x1 - x3) - y1;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, a: &CurvePoint) -> CurvePoint {
        self.add(a, a)
    }

    /// `k·P` by double-and-add.
    pub fn mul(&self, p: &CurvePoint, mut k: u64) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = *p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            k >>= 1;
        }
        acc
    }

    /// Checked form of [`Curve::add`].
    pub fn point_add(&self, a: &CurvePoint, b: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    /// Checked form of [`Curve::mul`].
    pub fn point_mul(&self, p: &CurvePoint, k: u64) -> Result<CurvePoint, CurveError> {
        self.check(p)?;
        Ok(self.mul(p, k))
    }

    /// `φ(x, y) = (-x, i·y)`, an endomorphism of `E(F_{q^2})` that moves
    /// points of `E(F_q)` off their own cyclic subgroup.
    pub fn distortion(&self, p: &CurvePoint) -> Result<Fq2Point, CurveError> {
        self.check(p)?;
        Ok(match *p {
            CurvePoint::Infinity => Fq2Point::Infinity,
            CurvePoint::Affine { x, y } => Fq2Point::Affine { x: Fq2::from_base(-x), y: Fq2::new(Fp::zero(self.q), y) },
        })
    }

    pub fn is_on_curve_fq2(&self, p: &Fq2Point) -> bool {
        match *p {
            Fq2Point::Infinity => true,
            Fq2Point::Affine { x, y } => y * y == x * x * x + x,
        }
    }

    /// All affine points of `E(F_q)` plus infinity. Desk-scale `q` only.
    pub fn enumerate(&self) -> Vec<CurvePoint> {
        let mut out = vec![CurvePoint::Infinity];
        for xv in 0..self.q {
            let x = self.fq(xv);
            let r = self.rhs(x);
            if let Some(y) = r.sqrt() {
                out.push(CurvePoint::Affine { x, y });
                if !y.is_zero() {
                    out.push(CurvePoint::Affine { x, y: -y });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws_q59() {
        let c = Curve::new(59);
        let pts = c.enumerate();
        assert_eq!(pts.len(), 60);
        for a in &pts {
            assert_eq!(c.add(a, &CurvePoint::Infinity), *a);
            assert_eq!(c.add(a, &c.neg(a)), CurvePoint::Infinity);
            assert_eq!(c.mul(a, 60), CurvePoint::Infinity);
        }
        for a in pts.iter().step_by(7) {
            for b in pts.iter().step_by(5) {
                assert_eq!(c.add(a, b), c.add(b, a));
                for d in pts.iter().step_by(11) {
                    assert_eq!(c.add(&c.add(a, b), d), c.add(a, &c.add(b, d)));
                }
            }
        }
    }

    #[test]
    fn order_five_subgroup_q59() {
        let c = Curve::new(59);
        let g = c.enumerate().into_iter().map(|r| c.mul(&r, 12)).find(|g| !g.is_infinity()).unwrap();
        assert_eq!(c.mul(&g, 5), CurvePoint::Infinity);
        assert!((1..5).all(|k| !c.mul(&g, k).is_infinity()));
    }

    #[test]
    fn distortion_lands_on_curve() {
        let c = Curve::new(59);
        assert_eq!(c.distortion(&CurvePoint::Infinity).unwrap(), Fq2Point::Infinity);
        for p in c.enumerate() {
            assert!(c.is_on_curve_fq2(&c.distortion(&p).unwrap()));
        }
        let bad = CurvePoint::Affine { x: c.fq(1), y: c.fq(1) };
        assert_eq!(c.distortion(&bad), Err(CurveError::NotOnCurve));
        assert_eq!(c.point_mul(&bad, 3), Err(CurveError::NotOnCurve));
    }
}
