//! 2x2 matrices with polynomial entries.

use crate::poly::{MultiPoly, Var};

/// A symbolic 2x2 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMat2 {
    pub m11: MultiPoly,
    pub m12: MultiPoly,
    pub m21: MultiPoly,
    pub m22: MultiPoly,
}

impl SymMat2 {
    pub fn new(m11: MultiPoly, m12: MultiPoly, m21: MultiPoly, m22: MultiPoly) -> Self {
        SymMat2 { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        SymMat2 {
            m11: MultiPoly::one(),
            m12: MultiPoly::zero(),
            m21: MultiPoly::zero(),
            m22: MultiPoly::one(),
        }
    }

    /// The generator M(x_i, y_i) = [[1 + x y, x], [y, 1]].
    pub fn generator(i: u32) -> Self {
        let x = MultiPoly::var(Var::x(i));
        let y = MultiPoly::var(Var::y(i));
        SymMat2 {
            m11: x.mul(&y).add(&MultiPoly::one()),
            m12: x,
            m21: y,
            m22: MultiPoly::one(),
        }
    }

    /// The product M(x_1,y_1) ... M(x_k,y_k).
    pub fn generator_product(k: u32) -> Self {
        let mut m = SymMat2::identity();
        for i in 1..=k {
            m = m.mul(&SymMat2::generator(i));
        }
        m
    }

    pub fn mul(&self, other: &SymMat2) -> SymMat2 {
        SymMat2 {
            m11: self.m11.mul(&other.m11).add(&self.m12.mul(&other.m21)),
            m12: self.m11.mul(&other.m12).add(&self.m12.mul(&other.m22)),
            m21: self.m21.mul(&other.m11).add(&self.m22.mul(&other.m21)),
            m22: self.m21.mul(&other.m12).add(&self.m22.mul(&other.m22)),
        }
    }

    pub fn det(&self) -> MultiPoly {
        self.m11.mul(&self.m22).sub(&self.m12.mul(&self.m21))
    }

    pub fn trace(&self) -> MultiPoly {
        self.m11.add(&self.m22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;

    #[test]
    fn generator_det_is_one() {
        assert_eq!(SymMat2::generator(1).det(), MultiPoly::one());
    }

    #[test]
    fn generator_trace() {
        // trace M(x1,y1) = x1*y1 + 2
        let t = SymMat2::generator(1).trace();
        assert_eq!(t.render_text(), "x1*y1 + 2");
    }
}
