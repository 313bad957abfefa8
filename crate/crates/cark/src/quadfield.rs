//! Real quadratic fields Q(sqrt(d)): ring of integers data, fractional ideals
//! with oriented bases, ideal norms, and the ideal-to-form map.

use crate::error::{Error, Result};
use crate::forms::Bqf;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Basic data of K = Q(sqrt(d)) for a square-free d > 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldData {
    pub d: BigInt,
    /// Fundamental discriminant: d when d = 1 mod 4, else 4d.
    pub delta: BigInt,
    /// True when the ring of integers is Z + (1+sqrt(d))/2 Z.
    pub half_integral: bool,
}

fn is_square_free(n: &BigInt) -> bool {
    let mut m = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let sq = &p * &p;
        if (&m % &sq).is_zero() {
            return false;
        }
        while (&m % &p).is_zero() {
            m /= &p;
        }
        p += 1;
    }
    true
}

/// Field data from a square-free integer d > 1.
pub fn field_from_d(d: &BigInt) -> Result<FieldData> {
    if d <= &BigInt::one() {
        return Err(Error::InvalidD(d.to_string()));
    }
    if !is_square_free(d) {
        return Err(Error::InvalidD(format!("{d} (not square-free)")));
    }
    let rem: BigInt = d % 4;
    let half_integral = rem == BigInt::one();
    let delta = if half_integral { d.clone() } else { d * 4 };
    Ok(FieldData {
        d: d.clone(),
        delta,
        half_integral,
    })
}

/// An element p + q*sqrt(d), coordinates always in the {1, sqrt(d)} basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFElement {
    pub p: BigRational,
    pub q: BigRational,
}

impl QFElement {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        QFElement { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        QFElement {
            p: BigRational::from_integer(BigInt::from(p)),
            q: BigRational::from_integer(BigInt::from(q)),
        }
    }

    /// Galois conjugate p - q*sqrt(d).
    pub fn conj(&self) -> QFElement {
        QFElement {
            p: self.p.clone(),
            q: -self.q.clone(),
        }
    }

    /// Field norm p^2 - d q^2.
    pub fn norm(&self, d: &BigInt) -> BigRational {
        &self.p * &self.p - BigRational::from_integer(d.clone()) * &self.q * &self.q
    }

    pub fn mul(&self, other: &QFElement, d: &BigInt) -> QFElement {
        let dd = BigRational::from_integer(d.clone());
        QFElement {
            p: &self.p * &other.p + &dd * &self.q * &other.q,
            q: &self.p * &other.q + &self.q * &other.p,
        }
    }

    pub fn add(&self, other: &QFElement) -> QFElement {
        QFElement {
            p: &self.p + &other.p,
            q: &self.q + &other.q,
        }
    }
}

/// A rank-2 Z-module in K given by an ordered basis (alpha, beta).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalIdeal {
    pub field: FieldData,
    pub alpha: QFElement,
    pub beta: QFElement,
}

impl FractionalIdeal {
    pub fn new(field: FieldData, alpha: QFElement, beta: QFElement) -> Result<Self> {
        let det = &alpha.p * &beta.q - &alpha.q * &beta.p;
        if det.is_zero() {
            return Err(Error::DegenerateBasis(
                "basis elements are rationally dependent".into(),
            ));
        }
        Ok(FractionalIdeal { field, alpha, beta })
    }

    /// The ring of integers with its standard basis (1, omega).
    pub fn ring_of_integers(field: FieldData) -> Self {
        let one = QFElement::from_ints(1, 0);
        let omega = if field.half_integral {
            QFElement::new(
                BigRational::new(BigInt::one(), BigInt::from(2)),
                BigRational::new(BigInt::one(), BigInt::from(2)),
            )
        } else {
            QFElement::from_ints(0, 1)
        };
        FractionalIdeal {
            field,
            alpha: one,
            beta: omega,
        }
    }
}

/// Coordinates of an element in the (1, omega) basis of Z_K.
fn omega_coords(e: &QFElement, field: &FieldData) -> (BigRational, BigRational) {
    if field.half_integral {
        // p + q sqrt(d) = (p - q) * 1 + 2q * (1 + sqrt(d))/2
        (&e.p - &e.q, &e.q * BigRational::from_integer(BigInt::from(2)))
    } else {
        (e.p.clone(), e.q.clone())
    }
}

/// Exact ideal norm: |det| of the change of basis from (1, omega) to
/// (alpha, beta). For an integral ideal this is the module index in Z_K.
pub fn ideal_norm(a: &FractionalIdeal) -> Result<BigRational> {
    let (a1, a2) = omega_coords(&a.alpha, &a.field);
    let (b1, b2) = omega_coords(&a.beta, &a.field);
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return Err(Error::DegenerateBasis("zero change-of-basis determinant".into()));
    }
    Ok(det.abs())
}

/// Orientation test: conj(alpha)*beta - alpha*conj(beta) is a positive
/// multiple of sqrt(d) exactly when alpha.p * beta.q - alpha.q * beta.p > 0.
pub fn is_oriented(a: &FractionalIdeal) -> bool {
    (&a.alpha.p * &a.beta.q - &a.alpha.q * &a.beta.p).is_positive()
}

/// Swap the basis if and only if the orientation inequality fails.
pub fn orient(a: &FractionalIdeal) -> FractionalIdeal {
    if is_oriented(a) {
        a.clone()
    } else {
        FractionalIdeal {
            field: a.field.clone(),
            alpha: a.beta.clone(),
            beta: a.alpha.clone(),
        }
    }
}

/// The form f_a sending X alpha + Y beta to its norm over N(a):
/// (alpha conj(alpha) / N, (alpha conj(beta) + conj(alpha) beta) / N,
///  beta conj(beta) / N).
pub fn form_from_ideal(a: &FractionalIdeal) -> Result<Bqf> {
    let n = ideal_norm(a)?;
    let d = &a.field.d;
    let ac = a.alpha.norm(d) / &n;
    // alpha conj(beta) + conj(alpha) beta = 2 (p1 p2 - d q1 q2)
    let bc = (&a.alpha.p * &a.beta.p
        - BigRational::from_integer(d.clone()) * &a.alpha.q * &a.beta.q)
        * BigRational::from_integer(BigInt::from(2))
        / &n;
    let cc = a.beta.norm(d) / &n;
    for (name, v) in [("a", &ac), ("b", &bc), ("c", &cc)] {
        if !v.is_integer() {
            return Err(Error::InvalidIdeal(format!(
                "coefficient {name} = {v} is not integral"
            )));
        }
    }
    let f = Bqf::new(
        ac.to_integer(),
        bc.to_integer(),
        cc.to_integer(),
    );
    if f.disc() != a.field.delta {
        return Err(Error::InvalidIdeal(format!(
            "form discriminant {} differs from field discriminant {}",
            f.disc(),
            a.field.delta
        )));
    }
    if !f.is_primitive() {
        return Err(Error::InvalidIdeal("form is not primitive".into()));
    }
    Ok(f)
}

/// Z_K-module generated by two elements: closes the pair under
/// multiplication by omega and row-reduces the four generators to a basis.
pub fn module_from_generators(
    field: &FieldData,
    g1: &QFElement,
    g2: &QFElement,
) -> Result<FractionalIdeal> {
    let omega = if field.half_integral {
        QFElement::new(
            BigRational::new(BigInt::one(), BigInt::from(2)),
            BigRational::new(BigInt::one(), BigInt::from(2)),
        )
    } else {
        QFElement::from_ints(0, 1)
    };
    let gens = [
        g1.clone(),
        g2.clone(),
        g1.mul(&omega, &field.d),
        g2.mul(&omega, &field.d),
    ];
    // clear denominators, HNF over Z in {1, sqrt(d)} coordinates
    let mut lcm = BigInt::one();
    for g in &gens {
        lcm = lcm.lcm(g.p.denom());
        lcm = lcm.lcm(g.q.denom());
    }
    let scale = BigRational::from_integer(lcm.clone());
    let mut rows: Vec<(BigInt, BigInt)> = gens
        .iter()
        .map(|g| ((&g.p * &scale).to_integer(), (&g.q * &scale).to_integer()))
        .collect();

    // 2-column integer HNF by repeated gcd elimination on the second column
    rows.retain(|(p, q)| !p.is_zero() || !q.is_zero());
    loop {
        rows.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()));
        let nonzero_q: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].1.is_zero()).collect();
        if nonzero_q.len() <= 1 {
            break;
        }
        let pivot = nonzero_q[0];
        let (pp, pq) = rows[pivot].clone();
        let mut changed = false;
        for &i in &nonzero_q[1..] {
            let quot = &rows[i].1 / &pq;
            if !quot.is_zero() {
                rows[i].0 -= &quot * &pp;
                rows[i].1 -= &quot * &pq;
                changed = true;
            }
        }
        rows.retain(|(p, q)| !p.is_zero() || !q.is_zero());
        if !changed {
            break;
        }
    }
    let beta_row = rows
        .iter()
        .find(|(_, q)| !q.is_zero())
        .cloned()
        .ok_or_else(|| Error::DegenerateBasis("module has rank < 2".into()))?;
    // gcd of the first coordinates of the pure-rational rows
    let mut g = BigInt::zero();
    for (p, q) in &rows {
        if q.is_zero() {
            g = g.gcd(p);
        }
    }
    if g.is_zero() {
        return Err(Error::DegenerateBasis("module has rank < 2".into()));
    }
    // reduce beta's first coordinate modulo g
    let mut bp = beta_row.0.clone();
    let bq = beta_row.1.clone();
    bp = bp.mod_floor(&g);
    let inv = |n: BigInt| BigRational::new(n, lcm.clone());
    let alpha = QFElement::new(inv(g), BigRational::zero());
    let beta = QFElement::new(inv(bp), inv(bq));
    FractionalIdeal::new(field.clone(), alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: i64) -> FieldData {
        field_from_d(&BigInt::from(d)).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(field(30).delta, BigInt::from(120));
        assert_eq!(field(5).delta, BigInt::from(5));
        assert!(field_from_d(&BigInt::from(12)).is_err());
        assert!(field_from_d(&BigInt::from(1)).is_err());
    }

    #[test]
    fn norm_of_2_sqrt30() {
        // a = (2, sqrt(30)) in Q(sqrt(30)) has norm 2
        let f = field(30);
        let a = FractionalIdeal::new(
            f,
            QFElement::from_ints(2, 0),
            QFElement::from_ints(0, 1),
        )
        .unwrap();
        assert_eq!(ideal_norm(&a).unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn norm_of_ring_and_scaled_ring() {
        let f = field(5);
        let zk = FractionalIdeal::ring_of_integers(f.clone());
        assert_eq!(ideal_norm(&zk).unwrap(), BigRational::from_integer(1.into()));
        let three = BigRational::from_integer(3.into());
        let scaled = FractionalIdeal::new(
            f,
            QFElement::new(&zk.alpha.p * &three, &zk.alpha.q * &three),
            QFElement::new(&zk.beta.p * &three, &zk.beta.q * &three),
        )
        .unwrap();
        assert_eq!(ideal_norm(&scaled).unwrap(), BigRational::from_integer(9.into()));
    }

    #[test]
    fn orientation() {
        let f = field(30);
        let a = FractionalIdeal::new(
            f.clone(),
            QFElement::from_ints(2, 0),
            QFElement::from_ints(0, 1),
        )
        .unwrap();
        assert!(is_oriented(&a));
        assert_eq!(orient(&a), a);
        let swapped = FractionalIdeal::new(
            f,
            QFElement::from_ints(0, 1),
            QFElement::from_ints(2, 0),
        )
        .unwrap();
        assert!(!is_oriented(&swapped));
        assert_eq!(orient(&swapped), a);
        // idempotent
        assert_eq!(orient(&orient(&swapped)), a);
    }

    #[test]
    fn form_of_2_sqrt30() {
        let f = field(30);
        let a = FractionalIdeal::new(
            f,
            QFElement::from_ints(2, 0),
            QFElement::from_ints(0, 1),
        )
        .unwrap();
        let form = form_from_ideal(&a).unwrap();
        assert_eq!(form, Bqf::from_i64(2, 0, -15));
    }

    #[test]
    fn form_of_zk_sqrt5() {
        let f = field(5);
        let zk = FractionalIdeal::ring_of_integers(f);
        let form = form_from_ideal(&orient(&zk)).unwrap();
        assert_eq!(form, Bqf::from_i64(1, 1, -1));
    }

    #[test]
    fn form_of_zk_sqrt2() {
        let f = field(2);
        let zk = FractionalIdeal::ring_of_integers(f);
        let form = form_from_ideal(&orient(&zk)).unwrap();
        assert_eq!(form, Bqf::from_i64(1, 0, -2));
    }

    #[test]
    fn module_generated_by_2_and_sqrt30() {
        let f = field(30);
        let m = module_from_generators(
            &f,
            &QFElement::from_ints(2, 0),
            &QFElement::from_ints(0, 1),
        )
        .unwrap();
        assert_eq!(ideal_norm(&m).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(form_from_ideal(&orient(&m)).unwrap(), Bqf::from_i64(2, 0, -15));
    }
}
