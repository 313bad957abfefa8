//! Integer 2x2 matrices of determinant 1 modulo +-I.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// An element of PSL2(Z). The stored representative has its first nonzero
/// entry (in the order p, q, r, s) positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Psl2Mat {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl Psl2Mat {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Self {
        let det = &p * &s - &q * &r;
        assert!(det.is_one(), "determinant must be 1, got {det}");
        let mut m = Psl2Mat { p, q, r, s };
        m.canonicalize();
        m
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Self {
        Psl2Mat::new(
            BigInt::from(p),
            BigInt::from(q),
            BigInt::from(r),
            BigInt::from(s),
        )
    }

    fn canonicalize(&mut self) {
        let first = [&self.p, &self.q, &self.r, &self.s]
            .into_iter()
            .find(|v| !v.is_zero());
        if let Some(v) = first {
            if v.is_negative() {
                self.p = -self.p.clone();
                self.q = -self.q.clone();
                self.r = -self.r.clone();
                self.s = -self.s.clone();
            }
        }
    }

    pub fn identity() -> Self {
        Psl2Mat::from_i64(1, 0, 0, 1)
    }

    /// S = [[0, -1], [1, 0]], order 2.
    pub fn s_gen() -> Self {
        Psl2Mat::from_i64(0, -1, 1, 0)
    }

    /// L = [[1, -1], [1, 0]], order 3.
    pub fn l_gen() -> Self {
        Psl2Mat::from_i64(1, -1, 1, 0)
    }

    /// L^2 = [[0, -1], [1, -1]].
    pub fn l2_gen() -> Self {
        Psl2Mat::from_i64(0, -1, 1, -1)
    }

    /// T = LS = [[1, 1], [0, 1]] in PSL2.
    pub fn t_gen() -> Self {
        Psl2Mat::from_i64(1, 1, 0, 1)
    }

    /// U = L^2 S = [[1, 0], [1, 1]] in PSL2.
    pub fn u_gen() -> Self {
        Psl2Mat::from_i64(1, 0, 1, 1)
    }

    pub fn mul(&self, other: &Psl2Mat) -> Psl2Mat {
        Psl2Mat::new(
            &self.p * &other.p + &self.q * &other.r,
            &self.p * &other.q + &self.q * &other.s,
            &self.r * &other.p + &self.s * &other.r,
            &self.r * &other.q + &self.s * &other.s,
        )
    }

    pub fn inverse(&self) -> Psl2Mat {
        Psl2Mat::new(
            self.s.clone(),
            -self.q.clone(),
            -self.r.clone(),
            self.p.clone(),
        )
    }

    /// Trace of the canonical representative; use `trace_abs` when the sign
    /// choice must not matter.
    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn trace_abs(&self) -> BigInt {
        self.trace().abs()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace_abs() > BigInt::from(2)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.p.is_negative()
            && !self.q.is_negative()
            && !self.r.is_negative()
            && !self.s.is_negative()
    }
}

impl fmt::Display for Psl2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_satisfy_relations() {
        let s = Psl2Mat::s_gen();
        let l = Psl2Mat::l_gen();
        assert_eq!(s.mul(&s), Psl2Mat::identity());
        assert_eq!(l.mul(&l), Psl2Mat::l2_gen());
        assert_eq!(l.mul(&l).mul(&l), Psl2Mat::identity());
    }

    #[test]
    fn ls_and_l2s_are_t_and_u() {
        assert_eq!(Psl2Mat::l_gen().mul(&Psl2Mat::s_gen()), Psl2Mat::t_gen());
        assert_eq!(Psl2Mat::l2_gen().mul(&Psl2Mat::s_gen()), Psl2Mat::u_gen());
    }

    #[test]
    fn inverse_roundtrip() {
        let w = Psl2Mat::from_i64(11, 30, 4, 11);
        assert_eq!(w.mul(&w.inverse()), Psl2Mat::identity());
    }

    #[test]
    fn sign_canonicalization() {
        assert_eq!(
            Psl2Mat::from_i64(-2, -1, -1, -1),
            Psl2Mat::from_i64(2, 1, 1, 1)
        );
    }
}
