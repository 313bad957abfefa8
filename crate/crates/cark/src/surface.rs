//! The çark hypersurface L_{2k}^2 - 4 = z^2 Δ: integer evaluation, point
//! enumeration, the cyclic quotient, and the narrow-class round trip.

use crate::error::{Error, Result};
use crate::forms::{
    automorphism, form_cycles, narrow_classes, pell_fundamental, reduce, FormClass,
    NarrowClassGroup, PellSolution,
};
use crate::quadfield::field_from_d;
use crate::words::{
    decompose, form_from_automorphism, tuple_to_matrix, CarkTuple, DEFAULT_CONJ_BOUND,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZMode {
    /// z = z0 from the fundamental Pell solution of delta.
    Fundamental,
    /// z fixed to an explicit value.
    Fixed(BigInt),
}

#[derive(Debug, Clone)]
pub struct SurfaceSpec {
    pub delta: BigInt,
    pub k_field: usize,
    pub z_mode: ZMode,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointClass {
    /// The induced form has discriminant delta itself.
    Fundamental,
    /// The induced form lives in a non-maximal order; carries its discriminant.
    Nonmaximal(BigInt),
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::Fundamental => write!(f, "fundamental"),
            PointClass::Nonmaximal(d) => write!(f, "nonmaximal({d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePoint {
    pub tuple: CarkTuple,
    pub z: BigInt,
    pub lucas: BigInt,
    pub classification: PointClass,
}

/// L_{2k} at the tuple: the trace of the corresponding matrix product.
pub fn lucas_eval_int(t: &CarkTuple) -> BigInt {
    tuple_to_matrix(t).trace_abs()
}

/// Discriminant of the primitive form stabilized by the tuple's matrix.
pub fn induced_disc(t: &CarkTuple) -> Result<BigInt> {
    Ok(form_from_automorphism(&tuple_to_matrix(t))?.disc())
}

pub fn classify(t: &CarkTuple, delta: &BigInt) -> Result<PointClass> {
    let d = induced_disc(t)?;
    if &d == delta {
        Ok(PointClass::Fundamental)
    } else {
        Ok(PointClass::Nonmaximal(d))
    }
}

/// The tuple of a narrow class: decompose its fundamental automorphism.
pub fn class_tuple(cls: &FormClass, sol: &PellSolution) -> Result<CarkTuple> {
    let w = automorphism(cls.positive_member(), sol)?;
    decompose(&w, DEFAULT_CONJ_BOUND)
}

/// k_K: the maximum tuple length over all narrow classes.
pub fn k_field(delta: &BigInt) -> Result<usize> {
    let group = narrow_classes(delta)?;
    let sol = pell_fundamental(delta)?;
    let mut k = 0;
    for cls in &group.classes {
        k = k.max(class_tuple(cls, &sol)?.len());
    }
    Ok(k)
}

/// All padded length-k tuples whose non-padding pairs read cyclically as a
/// rotation of `base`.
fn padded_variants(base: &CarkTuple, k: usize) -> Vec<CarkTuple> {
    let l = base.len();
    assert!(l <= k);
    let mut out: HashSet<CarkTuple> = HashSet::new();
    let zero = (BigInt::zero(), BigInt::zero());
    let mut positions = Vec::new();
    subsets(k, l, 0, &mut positions, &mut |pos| {
        for rot in base.rotations() {
            let mut pairs = vec![zero.clone(); k];
            for (slot, pair) in pos.iter().zip(rot.pairs()) {
                pairs[*slot] = pair.clone();
            }
            out.insert(CarkTuple::new(pairs).expect("valid padded tuple"));
        }
    });
    let mut v: Vec<CarkTuple> = out.into_iter().collect();
    v.sort();
    v
}

fn subsets(k: usize, l: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == l {
        f(acc);
        return;
    }
    for i in start..k {
        if k - i < l - acc.len() {
            break;
        }
        acc.push(i);
        subsets(k, l, i + 1, acc, f);
        acc.pop();
    }
}

fn resolve_z(spec: &SurfaceSpec) -> Result<BigInt> {
    match &spec.z_mode {
        ZMode::Fundamental => Ok(pell_fundamental(&spec.delta)?.z),
        ZMode::Fixed(z) => {
            if !z.is_positive() {
                return Err(Error::NoIntegralZ(
                    spec.delta.to_string(),
                    z.to_string(),
                ));
            }
            Ok(z.clone())
        }
    }
}

/// All admissible length-k tuples with L value x where x^2 - 4 = z^2 delta.
///
/// Rather than scanning the coordinate box directly, every point with trace
/// x is the automorphism W(x, z') of a reduced form of some discriminant
/// D' = (x^2 - 4)/z'^2, so it suffices to walk the class cycles of each
/// square divisor.
pub fn enumerate_points(spec: &SurfaceSpec) -> Result<Vec<SurfacePoint>> {
    let z = resolve_z(spec)?;
    let rhs = BigInt::from(4) + &z * &z * &spec.delta;
    let x = rhs.sqrt();
    if &x * &x != rhs {
        return Ok(Vec::new());
    }
    let mut points = Vec::new();
    let n = &x * &x - 4;
    let mut zp = BigInt::one();
    while &zp * &zp <= n {
        let sq = &zp * &zp;
        if n.is_multiple_of(&sq) {
            let dp = &n / &sq;
            let r = dp.mod_floor(&BigInt::from(4));
            let root = dp.sqrt();
            if (r.is_zero() || r.is_one()) && &root * &root != dp {
                let cycles = form_cycles(&dp)?;
                let sol = PellSolution {
                    x: x.clone(),
                    z: zp.clone(),
                    delta: dp.clone(),
                };
                let class_tag = if dp == spec.delta {
                    PointClass::Fundamental
                } else {
                    PointClass::Nonmaximal(dp.clone())
                };
                for cls in &cycles {
                    let base = class_tuple(cls, &sol)?;
                    if base.len() > spec.k_field {
                        continue;
                    }
                    for tuple in padded_variants(&base, spec.k_field) {
                        points.push(SurfacePoint {
                            tuple,
                            z: z.clone(),
                            lucas: x.clone(),
                            classification: class_tag.clone(),
                        });
                    }
                }
            }
        }
        zp += 1;
    }
    points.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    Ok(points)
}

/// Group points under the cyclic rotation action; each orbit is returned with
/// its canonical (lex-least rotation) member first.
pub fn quotient_orbits(points: &[SurfacePoint]) -> Vec<Vec<SurfacePoint>> {
    let mut map: BTreeMap<CarkTuple, Vec<SurfacePoint>> = BTreeMap::new();
    for p in points {
        map.entry(p.tuple.canonical()).or_default().push(p.clone());
    }
    map.into_values()
        .map(|mut orbit| {
            orbit.sort_by(|a, b| a.tuple.cmp(&b.tuple));
            orbit
        })
        .collect()
}

/// The point of a narrow class: decompose the fundamental automorphism and
/// append padding pairs up to length k.
pub fn class_to_point(delta: &BigInt, cls: &FormClass, k: usize) -> Result<SurfacePoint> {
    let sol = pell_fundamental(delta)?;
    let base = class_tuple(cls, &sol)?;
    let mut pairs = base.pairs().to_vec();
    if pairs.len() > k {
        return Err(Error::InvalidTuple(format!(
            "class tuple length {} exceeds k = {k}",
            pairs.len()
        )));
    }
    while pairs.len() < k {
        pairs.push((BigInt::zero(), BigInt::zero()));
    }
    let tuple = CarkTuple::new(pairs)?;
    let lucas = lucas_eval_int(&tuple);
    Ok(SurfacePoint {
        tuple,
        z: sol.z,
        lucas,
        classification: PointClass::Fundamental,
    })
}

/// The narrow class of a fundamental-classified point; rejects points whose
/// induced discriminant is not the group's.
pub fn point_to_class(p: &SurfacePoint, group: &NarrowClassGroup) -> Result<usize> {
    let f = form_from_automorphism(&tuple_to_matrix(&p.tuple))?;
    if f.disc() != group.delta {
        return Err(Error::DiscriminantMismatch {
            form: f.disc().to_string(),
            expected: group.delta.to_string(),
        });
    }
    let (red, _) = reduce(&f)?;
    group.class_index(&red)
}

/// Outcome of matching narrow classes against fundamental-classified orbits.
///
/// Padding placement is an evaluation artifact: a tuple with an interior
/// (0,0) names the same matrix, hence the same class, as the one with the
/// padding appended. Orbits are therefore identified when their stripped
/// cyclic words agree, and the bijection is checked on those classes.
#[derive(Debug, Clone)]
pub struct BijectionSummary {
    /// Rotation orbits of fundamental points.
    pub fundamental_orbits: usize,
    /// Orbits after identifying padding placements.
    pub fundamental_classes: usize,
    pub injective: bool,
    pub surjective: bool,
    pub counts_match: bool,
}

impl BijectionSummary {
    pub fn ok(&self) -> bool {
        self.injective && self.surjective && self.counts_match
    }
}

pub fn check_bijection(
    group: &NarrowClassGroup,
    orbits: &[Vec<SurfacePoint>],
    k: usize,
) -> Result<BijectionSummary> {
    let fundamental: Vec<&Vec<SurfacePoint>> = orbits
        .iter()
        .filter(|o| o[0].classification == PointClass::Fundamental)
        .collect();
    // identify padding placements
    let mut stripped: BTreeMap<CarkTuple, &SurfacePoint> = BTreeMap::new();
    for orbit in &fundamental {
        stripped
            .entry(orbit[0].tuple.strip_padding().canonical())
            .or_insert(&orbit[0]);
    }
    // classes -> points: distinct stripped words
    let mut images = HashSet::new();
    let mut injective = true;
    for cls in &group.classes {
        let p = class_to_point(&group.delta, cls, k)?;
        if !images.insert(p.tuple.strip_padding().canonical()) {
            injective = false;
        }
    }
    // points -> classes: each fundamental class hits a distinct narrow class
    let mut hit = HashSet::new();
    let mut surjective = true;
    for p in stripped.values() {
        match point_to_class(p, group) {
            Ok(idx) => {
                if !hit.insert(idx) {
                    surjective = false;
                }
            }
            Err(_) => surjective = false,
        }
    }
    let counts_match = stripped.len() == group.h_plus && hit.len() == group.h_plus;
    Ok(BijectionSummary {
        fundamental_orbits: fundamental.len(),
        fundamental_classes: stripped.len(),
        injective,
        surjective,
        counts_match,
    })
}

#[derive(Debug, Clone)]
pub struct RoundTripReport {
    pub d: BigInt,
    pub delta: BigInt,
    pub h_plus: usize,
    pub k: usize,
    pub z0: BigInt,
    pub x0: BigInt,
    pub total_points: usize,
    pub fundamental_orbits: usize,
    /// Fundamental orbits after identifying padding placements.
    pub fundamental_classes: usize,
    pub nonmaximal_orbits: usize,
    pub injective: bool,
    pub surjective: bool,
    pub counts_match: bool,
}

impl RoundTripReport {
    pub fn ok(&self) -> bool {
        self.injective && self.surjective && self.counts_match
    }
}

/// Verify the bijection between narrow classes and fundamental-classified
/// orbits for the field Q(sqrt(d)).
pub fn round_trip(d: &BigInt) -> Result<RoundTripReport> {
    let field = field_from_d(d)?;
    let delta = field.delta.clone();
    let group = narrow_classes(&delta)?;
    let sol = pell_fundamental(&delta)?;
    let k = k_field(&delta)?;
    let spec = SurfaceSpec {
        delta: delta.clone(),
        k_field: k,
        z_mode: ZMode::Fundamental,
    };
    let points = enumerate_points(&spec)?;
    let orbits = quotient_orbits(&points);
    let summary = check_bijection(&group, &orbits, k)?;
    Ok(RoundTripReport {
        d: d.clone(),
        delta,
        h_plus: group.h_plus,
        k,
        z0: sol.z,
        x0: sol.x,
        total_points: points.len(),
        fundamental_orbits: summary.fundamental_orbits,
        fundamental_classes: summary.fundamental_classes,
        nonmaximal_orbits: orbits.len() - summary.fundamental_orbits,
        injective: summary.injective,
        surjective: summary.surjective,
        counts_match: summary.counts_match,
    })
}

/// Intersect with the plane z = lambda; no discriminant filter is applied,
/// every point carries its induced discriminant in the classification.
pub fn general_hypersurface(
    delta: &BigInt,
    lambda: &BigInt,
    k: usize,
) -> Result<Vec<SurfacePoint>> {
    enumerate_points(&SurfaceSpec {
        delta: delta.clone(),
        k_field: k,
        z_mode: ZMode::Fixed(lambda.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::square_free_part;
    use crate::gauss::GaussRat;
    use crate::pauli::multivariate_lucas;
    use crate::poly::Var;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn tup(pairs: &[(i64, i64)]) -> CarkTuple {
        CarkTuple::from_i64(pairs).unwrap()
    }

    /// Independent box-scan oracle: every admissible length-k tuple with all
    /// entries <= bound whose L value is x.
    fn brute_points(x: i64, k: usize) -> Vec<CarkTuple> {
        let mut out = Vec::new();
        let mut pairs = vec![(0i64, 0i64); k];
        fn rec(pairs: &mut Vec<(i64, i64)>, i: usize, x: i64, out: &mut Vec<CarkTuple>) {
            if i == pairs.len() {
                if let Ok(t) = CarkTuple::from_i64(pairs) {
                    if lucas_eval_int(&t) == BigInt::from(x) {
                        out.push(t);
                    }
                }
                return;
            }
            pairs[i] = (0, 0);
            rec(pairs, i + 1, x, out);
            for m in 1..=x {
                for n in 1..=x {
                    pairs[i] = (m, n);
                    rec(pairs, i + 1, x, out);
                }
            }
            pairs[i] = (0, 0);
        }
        rec(&mut pairs, 0, x, &mut out);
        out.sort();
        out
    }

    #[test]
    fn lucas_eval_examples() {
        assert_eq!(lucas_eval_int(&tup(&[(1, 1)])), big(3));
        assert_eq!(lucas_eval_int(&tup(&[(4, 1), (2, 1)])), big(22));
        assert_eq!(lucas_eval_int(&tup(&[(5, 3), (0, 0)])), big(17));
    }

    #[test]
    fn lucas_eval_matches_symbolic() {
        for pairs in [vec![(1, 1)], vec![(4, 1), (2, 1)], vec![(2, 3), (1, 5)]] {
            let t = tup(&pairs);
            let poly = multivariate_lucas(t.len(), 8).unwrap();
            let mut assign = std::collections::BTreeMap::new();
            for (i, (m, n)) in pairs.iter().enumerate() {
                assign.insert(Var::x(i as u32 + 1), GaussRat::from_int(*m));
                assign.insert(Var::y(i as u32 + 1), GaussRat::from_int(*n));
            }
            let v = poly.eval(&assign).unwrap();
            assert!(v.is_real());
            assert_eq!(v.re, num_rational::BigRational::from(lucas_eval_int(&t)));
        }
    }

    #[test]
    fn k_field_examples() {
        assert_eq!(k_field(&big(120)).unwrap(), 2);
        assert_eq!(k_field(&big(5)).unwrap(), 1);
        assert_eq!(k_field(&big(8)).unwrap(), 1);
    }

    #[test]
    fn enumerate_delta_8() {
        let spec = SurfaceSpec {
            delta: big(8),
            k_field: 1,
            z_mode: ZMode::Fixed(big(2)),
        };
        let pts = enumerate_points(&spec).unwrap();
        let tuples: Vec<&CarkTuple> = pts.iter().map(|p| &p.tuple).collect();
        assert_eq!(
            tuples,
            vec![&tup(&[(1, 4)]), &tup(&[(2, 2)]), &tup(&[(4, 1)])]
        );
        for p in &pts {
            let expected = if p.tuple == tup(&[(2, 2)]) {
                PointClass::Fundamental
            } else {
                PointClass::Nonmaximal(big(32))
            };
            assert_eq!(p.classification, expected, "at {}", p.tuple);
            assert_eq!(&p.lucas * &p.lucas - 4, &p.z * &p.z * big(8));
        }
    }

    #[test]
    fn enumerate_delta_5() {
        let spec = SurfaceSpec {
            delta: big(5),
            k_field: 1,
            z_mode: ZMode::Fixed(big(1)),
        };
        let pts = enumerate_points(&spec).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].tuple, tup(&[(1, 1)]));
        assert_eq!(pts[0].classification, PointClass::Fundamental);
    }

    #[test]
    fn enumerate_matches_brute_scan() {
        // delta=8, z=2 (x=6) and delta=5, z=1 (x=3) at several lengths
        for (delta, z, x, k) in [(8, 2, 6, 1), (8, 2, 6, 2), (5, 1, 3, 1), (5, 1, 3, 2)] {
            let spec = SurfaceSpec {
                delta: big(delta),
                k_field: k,
                z_mode: ZMode::Fixed(big(z)),
            };
            let got: Vec<CarkTuple> = enumerate_points(&spec)
                .unwrap()
                .into_iter()
                .map(|p| p.tuple)
                .collect();
            assert_eq!(got, brute_points(x, k), "delta={delta} k={k}");
        }
    }

    #[test]
    fn delta_120_orbits() {
        let spec = SurfaceSpec {
            delta: big(120),
            k_field: 2,
            z_mode: ZMode::Fixed(big(2)),
        };
        let pts = enumerate_points(&spec).unwrap();
        let orbits = quotient_orbits(&pts);
        let fundamental: Vec<_> = orbits
            .iter()
            .filter(|o| o[0].classification == PointClass::Fundamental)
            .collect();
        assert_eq!(fundamental.len(), 4);
        for o in &orbits {
            assert_eq!(2 % o.len(), 0); // orbit sizes divide k
        }
    }

    #[test]
    fn orbit_examples() {
        let a = SurfacePoint {
            tuple: tup(&[(4, 1), (2, 1)]),
            z: big(2),
            lucas: big(22),
            classification: PointClass::Fundamental,
        };
        let mut b = a.clone();
        b.tuple = tup(&[(2, 1), (4, 1)]);
        assert_eq!(quotient_orbits(&[a, b]).len(), 1);

        let sym = SurfacePoint {
            tuple: tup(&[(2, 1), (2, 1)]),
            z: big(1),
            lucas: big(7),
            classification: PointClass::Nonmaximal(big(45)),
        };
        let orbits = quotient_orbits(&[sym]);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 1);
    }

    #[test]
    fn round_trip_30() {
        let r = round_trip(&big(30)).unwrap();
        assert_eq!(r.delta, big(120));
        assert_eq!(r.h_plus, 4);
        assert_eq!(r.k, 2);
        assert_eq!(r.z0, big(2));
        assert_eq!(r.x0, big(22));
        assert_eq!(r.fundamental_orbits, 4);
        assert!(r.ok());
    }

    #[test]
    fn round_trip_2_and_5() {
        for d in [2, 5] {
            let r = round_trip(&big(d)).unwrap();
            assert_eq!(r.h_plus, 1);
            assert!(r.ok(), "d = {d}");
        }
    }

    #[test]
    fn general_plane() {
        let pts = general_hypersurface(&big(8), &big(2), 1).unwrap();
        assert_eq!(pts.len(), 3);
        for p in &pts {
            let d = induced_disc(&p.tuple).unwrap();
            assert_eq!(square_free_part(&d), square_free_part(&big(8)));
        }
    }

    #[test]
    fn padding_and_rotation_invariance() {
        let t = tup(&[(3, 2), (1, 4)]);
        let padded = tup(&[(3, 2), (1, 4), (0, 0)]);
        assert_eq!(lucas_eval_int(&t), lucas_eval_int(&padded));
        for r in t.rotations() {
            assert_eq!(lucas_eval_int(&r), lucas_eval_int(&t));
        }
    }
}
