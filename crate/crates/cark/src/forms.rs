//! Indefinite integral binary quadratic forms: the PSL2(Z) action, reduction
//! cycles, narrow class groups via Dirichlet composition, Pell fundamental
//! solutions, and fundamental automorphisms W(x, z).

use crate::error::{Error, Result};
use crate::psl2::Psl2Mat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// The form a X^2 + b XY + c Y^2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bqf {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Bqf {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Bqf { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        Bqf::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// The inverse class representative (a, -b, c).
    pub fn opposite(&self) -> Bqf {
        Bqf::new(self.a.clone(), -self.b.clone(), self.c.clone())
    }
}

impl fmt::Display for Bqf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn check_disc(delta: &BigInt) -> Result<()> {
    if !delta.is_positive() || is_square(delta) {
        return Err(Error::InvalidDiscriminant(delta.to_string()));
    }
    Ok(())
}

/// True when delta is the discriminant of the maximal order of a real
/// quadratic field.
pub fn is_fundamental_discriminant(delta: &BigInt) -> bool {
    if !delta.is_positive() || is_square(delta) {
        return false;
    }
    let four = BigInt::from(4);
    let rem = delta.mod_floor(&four);
    if rem.is_one() {
        square_free(delta)
    } else if rem.is_zero() {
        let m = delta / &four;
        let mr = m.mod_floor(&four);
        (mr == BigInt::from(2) || mr == BigInt::from(3)) && square_free(&m)
    } else {
        false
    }
}

fn square_free(n: &BigInt) -> bool {
    let mut m = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let sq = &p * &p;
        if m.mod_floor(&sq).is_zero() {
            return false;
        }
        while m.mod_floor(&p).is_zero() {
            m /= &p;
        }
        p += 1;
    }
    true
}

/// Largest square-free divisor s with n = s * square.
pub fn square_free_part(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while m.mod_floor(&p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * m
}

/// Change of variables (X, Y) -> (pX + qY, rX + sY).
pub fn gamma_act(g: &Psl2Mat, f: &Bqf) -> Bqf {
    let (p, q, r, s) = (&g.p, &g.q, &g.r, &g.s);
    let a = &f.a * p * p + &f.b * p * r + &f.c * r * r;
    let b = BigInt::from(2) * &f.a * p * q + &f.b * (p * s + q * r) + BigInt::from(2) * &f.c * r * s;
    let c = &f.a * q * q + &f.b * q * s + &f.c * s * s;
    Bqf::new(a, b, c)
}

/// Reduced for indefinite discriminants: 0 < b < sqrt(D) and
/// sqrt(D) - b < 2|a| < sqrt(D) + b.
pub fn is_reduced(f: &Bqf) -> bool {
    let d = f.disc();
    if !d.is_positive() || is_square(&d) {
        return false;
    }
    if !f.b.is_positive() || &(&f.b * &f.b) >= &d {
        return false;
    }
    let two_a = BigInt::from(2) * f.a.abs();
    // sqrt(D) < 2|a| + b
    let upper = &two_a + &f.b;
    if &(&upper * &upper) <= &d {
        return false;
    }
    // 2|a| < sqrt(D) + b, i.e. (2|a| - b)^2 < D when 2|a| > b
    let diff = &two_a - &f.b;
    if diff.is_positive() && &(&diff * &diff) >= &d {
        return false;
    }
    true
}

/// One reduction step: (a, b, c) -> (c, b', (b'^2 - D)/(4c)) together with
/// the change of variables realizing it.
pub fn rho(f: &Bqf) -> (Bqf, Psl2Mat) {
    let d = f.disc();
    let root = d.sqrt(); // floor sqrt; D is non-square
    let two_c = BigInt::from(2) * f.c.abs();
    // b' = -b mod 2|c|, normalized into the standard window
    let b_new = if f.c.abs() > root {
        // -|c| < b' <= |c|
        let mut t = (-&f.b).mod_floor(&two_c);
        if t > f.c.abs() {
            t -= &two_c;
        }
        t
    } else {
        // sqrt(D) - 2|c| < b' < sqrt(D)
        &root - (&root + &f.b).mod_floor(&two_c)
    };
    let m = (&f.b + &b_new) / (BigInt::from(2) * &f.c);
    let c_new = (&b_new * &b_new - &d) / (BigInt::from(4) * &f.c);
    let g = Psl2Mat::new(BigInt::zero(), BigInt::from(-1), BigInt::one(), m);
    (Bqf::new(f.c.clone(), b_new, c_new), g)
}

/// Reduce a form, returning the reduced form and g with g . f = reduced.
pub fn reduce(f: &Bqf) -> Result<(Bqf, Psl2Mat)> {
    check_disc(&f.disc())?;
    let mut cur = f.clone();
    let mut g = Psl2Mat::identity();
    // one extra step past the first reduced form is never needed; terminates
    // because |c| strictly decreases while |c| > sqrt(D)
    for _ in 0..10_000 {
        if is_reduced(&cur) {
            debug_assert_eq!(gamma_act(&g, f), cur);
            return Ok((cur, g));
        }
        let (next, step) = rho(&cur);
        g = g.mul(&step);
        cur = next;
    }
    unreachable!("reduction did not terminate");
}

/// The rho-cycle through a reduced form.
pub fn rho_cycle(start: &Bqf) -> Vec<Bqf> {
    debug_assert!(is_reduced(start));
    let mut cycle = vec![start.clone()];
    let mut cur = rho(start).0;
    while &cur != start {
        cycle.push(cur.clone());
        cur = rho(&cur).0;
    }
    cycle
}

/// A narrow class: a full cycle of reduced forms. The representative is the
/// lexicographically least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClass {
    pub cycle: Vec<Bqf>,
}

impl FormClass {
    pub fn representative(&self) -> &Bqf {
        self.cycle.iter().min().expect("cycle is nonempty")
    }

    /// A member with positive leading coefficient (signs alternate around
    /// the cycle, so one always exists).
    pub fn positive_member(&self) -> &Bqf {
        self.cycle
            .iter()
            .find(|f| f.a.is_positive())
            .expect("cycle contains a form with a > 0")
    }

    pub fn contains(&self, f: &Bqf) -> bool {
        self.cycle.contains(f)
    }
}

/// The narrow class group of a positive non-square discriminant.
#[derive(Debug, Clone)]
pub struct NarrowClassGroup {
    pub delta: BigInt,
    pub fundamental: bool,
    pub classes: Vec<FormClass>,
    pub h_plus: usize,
    /// Invariant factors d1 | d2 | ... with product h_plus; empty for the
    /// trivial group.
    pub structure: Vec<u64>,
}

impl NarrowClassGroup {
    /// Index of the class containing f, after reduction.
    pub fn class_index(&self, f: &Bqf) -> Result<usize> {
        if f.disc() != self.delta {
            return Err(Error::DiscriminantMismatch {
                form: f.disc().to_string(),
                expected: self.delta.to_string(),
            });
        }
        let (red, _) = reduce(f)?;
        self.classes
            .iter()
            .position(|c| c.contains(&red))
            .ok_or_else(|| Error::InvalidDiscriminant(format!("form {f} not primitive for {}", self.delta)))
    }

    pub fn principal_index(&self) -> usize {
        let p = principal_form(&self.delta);
        self.class_index(&p).expect("principal form belongs to a class")
    }
}

/// The principal form (1, beta, (beta^2 - D)/4) with beta = D mod 2.
pub fn principal_form(delta: &BigInt) -> Bqf {
    let beta = delta.mod_floor(&BigInt::from(2));
    let c = (&beta * &beta - delta) / BigInt::from(4);
    Bqf::new(BigInt::one(), beta, c)
}

/// Enumerate all reduced primitive forms of the discriminant.
pub fn reduced_forms(delta: &BigInt) -> Result<Vec<Bqf>> {
    check_disc(delta)?;
    if let Some(d) = delta.to_i64() {
        return Ok(reduced_forms_small(d));
    }
    let root = delta.sqrt();
    let mut out = Vec::new();
    let parity = delta.mod_floor(&BigInt::from(2));
    let mut b = if parity.is_zero() { BigInt::from(2) } else { BigInt::one() };
    while b <= root {
        let ac4 = &b * &b - delta; // negative
        let ac = &ac4 / BigInt::from(4);
        let bound = (&root + &b) / BigInt::from(2);
        let mut a = BigInt::one();
        while a <= bound {
            if ac.mod_floor(&a).is_zero() {
                let c = &ac / &a;
                for (aa, cc) in [(a.clone(), c.clone()), (-&a, -&c)] {
                    let f = Bqf::new(aa, b.clone(), cc);
                    if is_reduced(&f) && f.is_primitive() {
                        out.push(f);
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Machine-integer scan over the reduced windows sqrt(D) - b < 2a < sqrt(D) + b;
/// avoids per-b factoring, which dominates for discriminants in the billions.
fn reduced_forms_small(delta: i64) -> Vec<Bqf> {
    let root = BigInt::from(delta).sqrt().to_i64().expect("isqrt fits");
    let parity = delta.rem_euclid(2);
    let mut out = Vec::new();
    for a in 1..=root {
        let fa = 4 * a as i128;
        let lo = (root - 2 * a).max(1);
        let mut b = if lo.rem_euclid(2) == parity { lo } else { lo + 1 };
        while b <= root {
            let n = delta as i128 - (b as i128) * (b as i128); // > 0: delta is non-square
            if n % fa == 0 {
                let c = (-(n / fa)) as i64;
                // reduced: sqrt(D) < 2a + b and, when 2a > b, 2a - b < sqrt(D)
                let hi = (2 * a + b) as i128;
                let ok_hi = hi * hi > delta as i128;
                let ok_lo = 2 * a <= b || {
                    let t = (2 * a - b) as i128;
                    t * t < delta as i128
                };
                let g = gcd_i64(gcd_i64(a, b), c.abs());
                if ok_hi && ok_lo && g == 1 {
                    out.push(Bqf::from_i64(a, b, c));
                    out.push(Bqf::from_i64(-a, b, -c));
                }
            }
            b += 2;
        }
    }
    out.sort();
    out.dedup();
    out
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Dirichlet composition of two primitive forms of equal discriminant.
/// The result represents the product class; callers compare reduced cycles.
pub fn compose(f: &Bqf, g: &Bqf) -> Result<Bqf> {
    let d = f.disc();
    if g.disc() != d {
        return Err(Error::DiscriminantMismatch {
            form: g.disc().to_string(),
            expected: d.to_string(),
        });
    }
    // work with positive leading coefficients from the reduced cycles
    let (rf, _) = reduce(f)?;
    let (rg, _) = reduce(g)?;
    let f1 = FormClass { cycle: rho_cycle(&rf) }.positive_member().clone();
    let f2 = FormClass { cycle: rho_cycle(&rg) }.positive_member().clone();
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };

    let s = (&f1.b + &f2.b) / BigInt::from(2);
    let n = &f2.b - &s;
    let (y1, dd) = if f2.a.mod_floor(&f1.a).is_zero() {
        (BigInt::zero(), f1.a.clone())
    } else {
        let (g, u, _) = ext_gcd(&f2.a, &f1.a);
        (u, g)
    };
    let (x2, y2, d1) = if s.mod_floor(&dd).is_zero() {
        (BigInt::zero(), BigInt::from(-1), dd.clone())
    } else {
        let (g, u, v) = ext_gcd(&s, &dd);
        (u, -v, g)
    };
    let v1 = &f1.a / &d1;
    let v2 = &f2.a / &d1;
    let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
    let a3 = &v1 * &v2;
    let b3 = &f2.b + BigInt::from(2) * &v2 * &r;
    let c3 = (&b3 * &b3 - &d) / (BigInt::from(4) * &a3);
    Ok(Bqf::new(a3, b3, c3))
}

fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    if n == 1 {
        return Vec::new();
    }
    let exponent = orders.iter().fold(1u64, |acc, &o| num_integer::lcm(acc, o));
    // count of elements with x^m = id for each divisor m of the exponent
    let count = |m: u64| orders.iter().filter(|&&o| m % o == 0).count() as u64;
    // search divisor chains d1 | d2 | ... | dk = exponent with product n
    fn search(rem: u64, max: u64, chain: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            out.push(chain.clone());
            return;
        }
        let mut d = 2;
        while d <= max {
            if rem % d == 0 && max % d == 0 {
                chain.push(d);
                search(rem / d, d, chain, out);
                chain.pop();
            }
            d += 1;
        }
    }
    let mut candidates = Vec::new();
    search(n / exponent, exponent, &mut vec![exponent], &mut candidates);
    'cand: for mut chain in candidates {
        chain.sort();
        let mut m = 1;
        loop {
            m += 1;
            if m > exponent {
                break;
            }
            if exponent % m != 0 {
                continue;
            }
            let predicted: u64 = chain.iter().map(|&d| num_integer::gcd(d, m)).product();
            if predicted != count(m) {
                continue 'cand;
            }
        }
        return chain;
    }
    // abelian structure theorem guarantees a match
    unreachable!("no invariant factor chain matched the element orders");
}

/// All reduced primitive forms of the discriminant partitioned into
/// rho-cycles, one FormClass per narrow class, without the group structure.
pub fn form_cycles(delta: &BigInt) -> Result<Vec<FormClass>> {
    let forms = reduced_forms(delta)?;
    let mut classes: Vec<FormClass> = Vec::new();
    let mut seen: Vec<bool> = vec![false; forms.len()];
    for (i, f) in forms.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let cycle = rho_cycle(f);
        for member in &cycle {
            let idx = forms
                .binary_search(member)
                .expect("cycle member is a reduced form");
            seen[idx] = true;
        }
        classes.push(FormClass { cycle });
    }
    classes.sort_by(|a, b| a.representative().cmp(b.representative()));
    Ok(classes)
}

/// Enumerate the narrow class group: all reduced primitive forms partitioned
/// into rho-cycles, with the group structure from Dirichlet composition.
/// Non-fundamental discriminants are accepted and flagged.
pub fn narrow_classes(delta: &BigInt) -> Result<NarrowClassGroup> {
    let classes = form_cycles(delta)?;
    let h_plus = classes.len();

    let group = NarrowClassGroup {
        delta: delta.clone(),
        fundamental: is_fundamental_discriminant(delta),
        classes,
        h_plus,
        structure: Vec::new(),
    };
    // element orders by repeated composition with the representative
    let id = group.principal_index();
    let mut orders = Vec::with_capacity(h_plus);
    for i in 0..h_plus {
        let base = group.classes[i].positive_member().clone();
        let mut acc = base.clone();
        let mut order = 1u64;
        while group.class_index(&acc)? != id {
            acc = compose(&acc, &base)?;
            order += 1;
            assert!(order as usize <= h_plus, "order exceeds group size");
        }
        orders.push(order);
    }
    let structure = invariant_factors(&orders);
    Ok(NarrowClassGroup { structure, ..group })
}

/// A solution of x^2 - delta z^2 = 4 with x, z > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub x: BigInt,
    pub z: BigInt,
    pub delta: BigInt,
}

/// Fundamental solution (minimal z > 0) via one traversal of the principal
/// reduction cycle.
pub fn pell_fundamental(delta: &BigInt) -> Result<PellSolution> {
    check_disc(delta)?;
    let (f0, _) = reduce(&principal_form(delta))?;
    let mut cur = f0.clone();
    let mut w = Psl2Mat::identity();
    loop {
        let (next, step) = rho(&cur);
        w = w.mul(&step);
        cur = next;
        if cur == f0 {
            break;
        }
    }
    debug_assert_eq!(gamma_act(&w, &f0), f0);
    let x = w.trace_abs();
    let z2 = (&x * &x - BigInt::from(4)) / delta;
    let z = z2.sqrt();
    assert_eq!(&z * &z, z2, "cycle automorphism violates the trace identity");
    Ok(PellSolution {
        x,
        z,
        delta: delta.clone(),
    })
}

/// The automorphism W(x, z) = [[(x - zb)/2, -cz], [az, (x + zb)/2]] of f.
pub fn automorphism(f: &Bqf, s: &PellSolution) -> Result<Psl2Mat> {
    if f.disc() != s.delta {
        return Err(Error::DiscriminantMismatch {
            form: f.disc().to_string(),
            expected: s.delta.to_string(),
        });
    }
    let zb = &s.z * &f.b;
    let two = BigInt::from(2);
    // x = zb mod 2 always holds for Pell solutions of this discriminant
    debug_assert!(((&s.x - &zb).mod_floor(&two)).is_zero());
    Ok(Psl2Mat::new(
        (&s.x - &zb) / &two,
        -(&f.c * &s.z),
        &f.a * &s.z,
        (&s.x + &zb) / &two,
    ))
}

/// Returns the z >= 0 with trace(w)^2 - 4 = z^2 * delta, if it exists.
pub fn trace_identity_check(w: &Psl2Mat, delta: &BigInt) -> Result<BigInt> {
    if !w.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    check_disc(delta)?;
    let t = w.trace_abs();
    let lhs = &t * &t - BigInt::from(4);
    if !lhs.mod_floor(delta).is_zero() {
        return Err(Error::NoIntegralZ(lhs.to_string(), delta.to_string()));
    }
    let z2 = &lhs / delta;
    let z = z2.sqrt();
    if &z * &z != z2 {
        return Err(Error::NoIntegralZ(lhs.to_string(), delta.to_string()));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gamma_act_identity_and_disc() {
        let f = Bqf::from_i64(2, 0, -15);
        assert_eq!(gamma_act(&Psl2Mat::identity(), &f), f);
        let g = Psl2Mat::from_i64(2, 1, 1, 1);
        assert_eq!(gamma_act(&g, &f).disc(), f.disc());
    }

    #[test]
    fn s_swaps_outer_coefficients() {
        // S: (X, Y) -> (-Y, X)
        let f = Bqf::from_i64(2, 0, -15);
        assert_eq!(gamma_act(&Psl2Mat::s_gen(), &f), Bqf::from_i64(-15, 0, 2));
    }

    #[test]
    fn reduce_example_forms() {
        let (r, g) = reduce(&Bqf::from_i64(2, 0, -15)).unwrap();
        assert!(is_reduced(&r));
        assert_eq!(r.disc(), big(120));
        assert_eq!(gamma_act(&g, &Bqf::from_i64(2, 0, -15)), r);

        let (r, _) = reduce(&Bqf::from_i64(1, 0, -2)).unwrap();
        assert!(is_reduced(&r));
        assert_eq!(r.disc(), big(8));

        // already reduced -> unchanged with identity transform
        let f = Bqf::from_i64(1, 1, -1);
        assert!(is_reduced(&f));
        let (r, g) = reduce(&f).unwrap();
        assert_eq!(r, f);
        assert_eq!(g, Psl2Mat::identity());
    }

    #[test]
    fn reduce_rejects_square_disc() {
        assert!(reduce(&Bqf::from_i64(1, 3, 0)).is_err());
    }

    #[test]
    fn narrow_classes_small_fields() {
        let g = narrow_classes(&big(120)).unwrap();
        assert_eq!(g.h_plus, 4);
        assert_eq!(g.structure, vec![2, 2]);
        assert!(g.fundamental);

        assert_eq!(narrow_classes(&big(5)).unwrap().h_plus, 1);
        assert_eq!(narrow_classes(&big(12)).unwrap().h_plus, 2);
    }

    #[test]
    fn pell_small() {
        let s = pell_fundamental(&big(120)).unwrap();
        assert_eq!((s.x, s.z), (big(22), big(2)));
        let s = pell_fundamental(&big(5)).unwrap();
        assert_eq!((s.x, s.z), (big(3), big(1)));
        let s = pell_fundamental(&big(8)).unwrap();
        assert_eq!((s.x, s.z), (big(6), big(2)));
        assert!(pell_fundamental(&big(49)).is_err());
    }

    #[test]
    fn automorphism_example() {
        let f = Bqf::from_i64(2, 0, -15);
        let s = pell_fundamental(&big(120)).unwrap();
        let w = automorphism(&f, &s).unwrap();
        assert_eq!(w, Psl2Mat::from_i64(11, 30, 4, 11));
        assert_eq!(gamma_act(&w, &f), f);

        let f = Bqf::from_i64(1, 1, -1);
        let s = pell_fundamental(&big(5)).unwrap();
        let w = automorphism(&f, &s).unwrap();
        assert_eq!(w, Psl2Mat::from_i64(1, 1, 1, 2));
        assert_eq!(gamma_act(&w, &f), f);
    }

    #[test]
    fn automorphism_inverse_pair() {
        // W(x0, z0) and W(x0, -z0) are mutually inverse
        let f = Bqf::from_i64(2, 0, -15);
        let s = pell_fundamental(&big(120)).unwrap();
        let w = automorphism(&f, &s).unwrap();
        let neg = PellSolution {
            x: s.x.clone(),
            z: -s.z.clone(),
            delta: s.delta.clone(),
        };
        let winv = automorphism(&f, &neg).unwrap();
        assert_eq!(w.mul(&winv), Psl2Mat::identity());
    }

    #[test]
    fn trace_identity() {
        let w = Psl2Mat::from_i64(11, 30, 4, 11);
        assert_eq!(trace_identity_check(&w, &big(120)).unwrap(), big(2));
        let w = Psl2Mat::from_i64(1, 1, 1, 2);
        assert_eq!(trace_identity_check(&w, &big(5)).unwrap(), big(1));
        let w = Psl2Mat::from_i64(2, 1, 1, 1);
        assert!(trace_identity_check(&w, &big(7)).is_err());
    }

    #[test]
    fn composition_group_laws() {
        let g = narrow_classes(&big(120)).unwrap();
        let id = g.principal_index();
        let p = principal_form(&big(120));
        for cls in &g.classes {
            let f = cls.representative();
            // identity
            let prod = compose(&p, f).unwrap();
            assert_eq!(g.class_index(&prod).unwrap(), g.class_index(f).unwrap());
            // inverse
            let prod = compose(f, &f.opposite()).unwrap();
            assert_eq!(g.class_index(&prod).unwrap(), id);
            // exponent 2 for (Z/2Z)^2
            let prod = compose(f, f).unwrap();
            assert_eq!(g.class_index(&prod).unwrap(), id);
        }
    }

    #[test]
    fn reduced_forms_matches_naive_scan() {
        // naive oracle: for each b, factor (delta - b^2)/4 by trial division
        fn naive(delta: i64) -> Vec<Bqf> {
            let d = BigInt::from(delta);
            let root = d.sqrt();
            let mut out = Vec::new();
            let parity = delta.rem_euclid(2);
            let mut b = if parity == 0 { 2 } else { 1 };
            while BigInt::from(b) <= root {
                let n = (delta - b * b) / 4; // = a * (-c) > 0
                let mut a = 1;
                while a * a <= n {
                    if n % a == 0 {
                        for (aa, cc) in [(a, -(n / a)), (n / a, -a)] {
                            for (aa, cc) in [(aa, cc), (-aa, -cc)] {
                                let f = Bqf::from_i64(aa, b, cc);
                                if is_reduced(&f) && f.is_primitive() {
                                    out.push(f);
                                }
                            }
                        }
                    }
                    a += 1;
                }
                b += 2;
            }
            out.sort();
            out.dedup();
            out
        }
        for delta in 5..=500i64 {
            let big_d = big(delta);
            if delta.rem_euclid(4) > 1 || check_disc(&big_d).is_err() {
                continue;
            }
            assert_eq!(reduced_forms(&big_d).unwrap(), naive(delta), "delta = {delta}");
        }
    }

    #[test]
    fn fundamental_discriminant_classification() {
        assert!(is_fundamental_discriminant(&big(5)));
        assert!(is_fundamental_discriminant(&big(8)));
        assert!(is_fundamental_discriminant(&big(120)));
        assert!(!is_fundamental_discriminant(&big(32)));
        assert!(is_fundamental_discriminant(&big(12))); // 4*3 with 3 = 3 mod 4
        assert!(!is_fundamental_discriminant(&big(48)));
    }
}
